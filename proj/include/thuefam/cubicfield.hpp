#pragma once

// Exact arithmetic in K = Q(alpha), alpha a root of a monic integral cubic
// with one real root, together with certified embeddings. The real embedding
// sends alpha to the real root, the complex one to the root alpha' with
// positive imaginary part.

#include <gmpxx.h>

#include <array>
#include <memory>
#include <utility>
#include <vector>

#include "thuefam/interval.hpp"

namespace thuefam {

/// Coefficients of X^3 + c[1] X^2 + c[2] X + c[3], leading entry first.
using Cubic = std::array<mpz_class, 4>;

/// b^2 c^2 - 4 c^3 - 4 b^3 d - 27 d^2 + 18 b c d for a monic X^3 + b X^2 + c X + d.
mpz_class cubic_discriminant(const Cubic& f);

class CubicField {
public:
    /// Throws NonMonic, ReduciblePolynomial or TotallyReal.
    explicit CubicField(const Cubic& min_poly);

    const Cubic& min_poly() const;
    const mpz_class& disc() const;

    /// Rational interval [lo, hi] of width 2^-bits around the real root.
    std::pair<mpq_class, mpq_class> real_root_isolation(long bits = 0) const;
    /// Rational box {re_lo, re_hi, im_lo, im_hi} around alpha'.
    std::array<mpq_class, 4> complex_root_isolation(long bits = 64) const;

    /// Enclosure of the real root of width at most 2^-bits.
    Interval real_root(long bits) const;
    /// Enclosure of alpha' obtained from real_root(bits).
    ComplexBox complex_root(long bits) const;

    /// log2 of a bound on the moduli of all roots.
    long root_bound_bits() const;

    bool operator==(const CubicField& other) const;
    bool operator!=(const CubicField& other) const { return !(*this == other); }

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

CubicField make_field(const Cubic& coeffs);

class FieldElement {
public:
    FieldElement(CubicField field, mpq_class c0, mpq_class c1 = 0, mpq_class c2 = 0);
    FieldElement(CubicField field, const std::array<mpq_class, 3>& coords);

    static FieldElement generator(const CubicField& field);
    static FieldElement one(const CubicField& field);

    const CubicField& field() const { return field_; }
    const std::array<mpq_class, 3>& coords() const { return c_; }
    const mpq_class& operator[](int i) const { return c_[i]; }

    bool is_zero() const;
    bool is_rational() const { return c_[1] == 0 && c_[2] == 0; }
    bool is_integral() const;

    FieldElement inverse() const;
    FieldElement pow(long e) const;

    /// Characteristic polynomial X^3 - tr X^2 + e2 X - N as {1, -tr, e2, -N}.
    std::array<mpq_class, 4> charpoly() const;
    /// Primitive integral minimal polynomial, positive leading coefficient,
    /// highest degree first (length 2 or 4).
    std::vector<mpz_class> min_poly() const;

    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    friend FieldElement operator-(const FieldElement& a);
    friend FieldElement operator*(const mpq_class& s, const FieldElement& a);

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    void check_same(const FieldElement& o) const;

    CubicField field_;
    std::array<mpq_class, 3> c_;
};

mpq_class norm(const FieldElement& x);
mpq_class trace(const FieldElement& x);

struct Embedding {
    Interval real;       ///< sigma_real(x)
    ComplexBox complex;  ///< sigma(x), alpha -> alpha'
};

/// Enclosures with width <= eps (eps > 0).
Embedding embed(const FieldElement& x, double eps);
/// Enclosures computed from root enclosures of width 2^-bits at precision
/// about bits; no width guarantee.
Embedding embed_bits(const FieldElement& x, long bits);
/// Enclosures of a nonzero element, each excluding zero and with width at
/// most 2^-rel_bits times its lower modulus bound.
Embedding embed_relative(const FieldElement& x, long rel_bits);

/// max(|sigma_real(x)|, |sigma(x)|), enclosed to about eps.
Interval house(const FieldElement& x, double eps);

}  // namespace thuefam
