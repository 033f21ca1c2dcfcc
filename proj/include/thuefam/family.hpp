#pragma once

// Binary cubic forms and the unit-indexed families
//   F_n(X, Y) = N(X - eps^n alpha Y),
// together with the D-parametrised example family built on
// eps^-1 a root of X^3 + 3D X^2 + 3D^2 X - 1.

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "thuefam/cubicfield.hpp"

namespace thuefam {

/// a[0] X^3 + a[1] X^2 Y + a[2] X Y^2 + a[3] Y^3
struct BinaryCubicForm {
    std::array<mpz_class, 4> a;

    mpz_class operator()(const mpz_class& x, const mpz_class& y) const;
    bool operator==(const BinaryCubicForm& o) const { return a == o.a; }
    bool operator!=(const BinaryCubicForm& o) const { return a != o.a; }
    BinaryCubicForm operator-() const;
    /// Space separated coefficients, e.g. "1 -156 12 -1".
    std::string to_string() const;
};

/// G(X, Y) = F(Y, X).
BinaryCubicForm negative_n_swap(const BinaryCubicForm& f);

/// Whether F(X, 1) (or F itself when a0 = 0) has a rational linear factor.
bool has_linear_factor(const BinaryCubicForm& f);

struct Normalization {
    BinaryCubicForm monic;  ///< T^3 + a1 T^2 Y + a0 a2 T Y^2 + a0^2 a3 Y^3
    mpz_class scale;        ///< a0: x -> a0 x and k -> a0^2 k
};

/// Throws ReducibleForm for reducible input, TotallyReal for three real roots.
Normalization normalize(const BinaryCubicForm& f);

class FormFamily {
public:
    /// alpha must be an integral irrational element, epsilon a unit whose real
    /// embedding exceeds 1 (NotAUnit otherwise). scale is the leading
    /// coefficient of the original form before normalisation.
    FormFamily(FieldElement alpha, FieldElement epsilon, mpz_class scale = 1,
               std::optional<long> D = std::nullopt);

    const CubicField& field() const { return alpha_.field(); }
    const FieldElement& alpha() const { return alpha_; }
    const FieldElement& epsilon() const { return epsilon_; }
    const mpz_class& scale() const { return scale_; }
    const std::optional<long>& D() const { return D_; }

    FieldElement beta(long n) const;
    BinaryCubicForm form_at(long n) const;
    BinaryCubicForm base_form() const { return form_at(0); }
    /// eps^n alpha is rational, so F_n is a cube of a linear form.
    bool is_degenerate(long n) const;

private:
    FieldElement alpha_;
    FieldElement epsilon_;
    mpz_class scale_;
    std::optional<long> D_;
};

/// Family of a given irreducible form with eps given in the power basis of
/// the generator of the normalised form.
FormFamily family_from_form(const BinaryCubicForm& f, const std::array<mpq_class, 3>& epsilon_coords);

/// Example family; D = 0 and D = -1 raise InvalidParameter.
FormFamily example_family(long D);

/// Family of G(X, Y) = F(Y, X): generator -N(alpha) alpha^-1, same unit.
/// Solutions (x, y) of F_{-m} correspond to (scale * y, x) for its F~_m.
FormFamily swapped_family(const FormFamily& fam);

struct CoefficientSequence {
    long n_first = 0;
    std::vector<mpz_class> a;  ///< a[i] = trace(eps^(n_first + i + 1))
    /// a_{n+3} = 3D^2 a_{n+2} + 3D a_{n+1} + a_n on every window.
    bool minpoly_recurrence_holds = false;
    /// The alternative order a_{n+3} = 3D a_{n+2} + 3D^2 a_{n+1} + a_n on every window.
    bool swapped_recurrence_holds = false;
    mpz_class a1_from_trace;
    mpz_class a1_minpoly_order;
    mpz_class a1_swapped_order;

    const mpz_class& at(long n) const { return a.at(static_cast<size_t>(n - n_first)); }
};

/// a_n = trace(eps^(n+1)) for n in [n_lo, n_hi] of the example family.
CoefficientSequence coefficient_sequence(long D, long n_lo, long n_hi);

/// True when c3 a_{i+3} = c2 a_{i+2} + c1 a_{i+1} + c0 a_i on every window.
bool satisfies_recurrence(const std::vector<mpz_class>& a, const mpz_class& c2, const mpz_class& c1,
                          const mpz_class& c0);

struct SwapCheck {
    bool holds = false;
    BinaryCubicForm lhs;  ///< F_{-n}(X, Y)
    BinaryCubicForm rhs;  ///< -F_{n-2}(Y, X)
};

/// F_{-n}(X, Y) = -F_{n-2}(Y, X), coefficientwise.
SwapCheck swap_identity_check(const FormFamily& fam, long n);

}  // namespace thuefam
