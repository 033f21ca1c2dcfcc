#pragma once

// Unit reduction: gamma = eps^ell xi with the three embeddings of xi as close
// as possible to |N(gamma)|^(1/3) in logarithmic scale.

#include <gmpxx.h>

#include <optional>

#include "thuefam/cubicfield.hpp"
#include "thuefam/family.hpp"
#include "thuefam/interval.hpp"

namespace thuefam {

struct Decomposition {
    long ell = 0;
    FieldElement xi;
    mpq_class norm_abs;  ///< m = |N(gamma)|
    /// max_j |log(|sigma_j(xi)| / m^(1/3))|
    Interval balance;
};

/// ell minimises |log|sigma_real(eps^-ell gamma)| - (1/3) log m|; an exact
/// tie goes to the smaller ell. Throws ZeroElement.
Decomposition unit_reduce(const FormFamily& fam, const FieldElement& gamma, double eps = 1e-30);
Decomposition unit_reduce(const FieldElement& unit, const FieldElement& gamma, double eps = 1e-30);

struct SolutionReduction {
    FieldElement gamma;  ///< x - eps^n alpha y
    mpz_class value;     ///< F_n(x, y)
    Decomposition dec;
    /// log max(house(xi), 1/|sigma_real xi|, 1/|sigma xi|) / log k, for k >= 2.
    std::optional<Interval> kappa9;
    /// e^(-R/2-tol) m^(1/3) <= |sigma_j(xi)| <= e^(R/2+tol) m^(1/3) for all j, tol = 1e-20.
    bool sandwich_holds = false;
};

/// k defaults to |F_n(x, y)|. Throws TrivialXY, DegenerateN or ZeroValue.
SolutionReduction decompose_solution(const FormFamily& fam, long n, const mpz_class& x, const mpz_class& y,
                                     std::optional<mpz_class> k = std::nullopt, double eps = 1e-30);

}  // namespace thuefam
