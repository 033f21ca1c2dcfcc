#pragma once

// Exact integer cubic polynomials in one variable and a complete search for
// the integers at which |p(x)| stays below a bound. The search splits the line
// at the (exactly located) integer neighbours of the critical points, so p is
// monotone on every piece and the solution set on a piece is contiguous.

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace thuefam {

struct IntCubic {
    mpz_class c3;
    mpz_class c2;
    mpz_class c1;
    mpz_class c0;

    mpz_class operator()(const mpz_class& x) const;
};

struct MonotonePiece {
    std::optional<mpz_class> lo;  ///< nullopt means unbounded below
    std::optional<mpz_class> hi;  ///< nullopt means unbounded above
    bool increasing = true;
};

/// Integer intervals on which p is monotone, left to right; c3 must be nonzero.
std::vector<MonotonePiece> monotone_pieces(const IntCubic& p);

/// Every integer x with |p(x)| <= bound, ascending. `hint` only affects speed:
/// it seeds the galloping search on the piece that contains it.
std::vector<mpz_class> small_value_points(const IntCubic& p, const mpz_class& bound,
                                          const std::optional<mpz_class>& hint = std::nullopt);

/// Integer roots of p (rational roots when p is monic).
std::vector<mpz_class> integer_roots(const IntCubic& p);

}  // namespace thuefam
