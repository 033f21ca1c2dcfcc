#pragma once

// Mahler measures, absolute logarithmic heights, the regulator log eps and a
// certificate that eps is not a proper power of a smaller unit.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "thuefam/cubicfield.hpp"
#include "thuefam/family.hpp"
#include "thuefam/interval.hpp"

namespace thuefam {

struct HeightReport {
    Interval mahler;
    Interval height;
    int degree_used = 0;
};

/// |a0| prod max(1, |root|) for integer coefficients, leading first. The
/// enclosure has width at most eps * max(1, M). Throws ZeroPolynomial.
Interval mahler_measure(const std::vector<mpz_class>& poly, double eps = 1e-30);

/// (1/deg) log M(minimal polynomial of x). Throws ZeroElement.
HeightReport abs_log_height(const FieldElement& x, double eps = 1e-30);

/// (1/d) sum log max(1, |c|) over enclosures of all conjugates of an
/// algebraic integer of degree d.
Interval log_height_from_conjugates(const std::vector<Interval>& moduli);

/// log of the real embedding of a unit > 1. Throws NotAUnit.
Interval regulator(const FieldElement& unit, double eps = 1e-30);
Interval regulator(const FormFamily& fam, double eps = 1e-30);

/// Squarefree decomposition over Q: pairs (monic squarefree factor, multiplicity).
std::vector<std::pair<std::vector<mpq_class>, int>> squarefree_decomposition(const std::vector<mpz_class>& poly);

enum class Fundamentality { ProvedFundamental, Unknown };

struct FundamentalityCertificate {
    Fundamentality status = Fundamentality::Unknown;
    /// "artin", "pisot-enumeration" or "none"
    std::string method = "none";
    mpz_class poly_disc;
    /// Certified lower bound for |disc K| from Dedekind's criterion.
    mpz_class field_disc_lower_bound;
    /// Enclosure of 4 eps^(3/2) + 24.
    Interval artin_rhs;
    /// Artin: field_disc_lower_bound - artin_rhs (lower end). Pisot: smallest
    /// certified |P(eps^(1/m))| over all candidate polynomials P.
    double margin = 0.0;
    /// Prime exponents m for which eps = eta^m was excluded.
    std::vector<long> excluded_exponents;
    /// Candidate (m, t, s, N) polynomials X^3 - t X^2 + s X - N not excluded.
    std::vector<std::string> unresolved;
};

/// Throws NotAUnit when eps is not a unit > 1.
FundamentalityCertificate check_fundamental(const FieldElement& unit);
FundamentalityCertificate check_fundamental(const FormFamily& fam);

/// Lower bound on |disc K| for K generated by a root of the monic cubic f.
mpz_class field_discriminant_lower_bound(const Cubic& f);

std::string to_string(Fundamentality f);

}  // namespace thuefam
