#include "thuefam/intcubic.hpp"

#include <functional>

#include "thuefam/errors.hpp"

namespace thuefam {

mpz_class IntCubic::operator()(const mpz_class& x) const {
    mpz_class r = c3 * x;
    r += c2;
    r *= x;
    r += c1;
    r *= x;
    r += c0;
    return r;
}

std::vector<MonotonePiece> monotone_pieces(const IntCubic& p) {
    if (p.c3 == 0) throw Error(ErrorKind::InvalidParameter, "leading coefficient is zero");
    IntCubic q = p;
    const bool flip = q.c3 < 0;
    if (flip) {
        q.c3 = -q.c3;
        q.c2 = -q.c2;
        q.c1 = -q.c1;
        q.c0 = -q.c0;
    }
    // q'(x) = 3 c3 x^2 + 2 c2 x + c1, roots (-c2 +- sqrt(c2^2 - 3 c3 c1)) / (3 c3).
    const mpz_class disc = q.c2 * q.c2 - 3 * q.c3 * q.c1;
    std::vector<MonotonePiece> out;
    if (disc <= 0) {
        out.push_back({std::nullopt, std::nullopt, !flip});
        return out;
    }
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
    const bool square = s * s == disc;
    const mpz_class den = 3 * q.c3;
    const mpz_class a = -q.c2;
    mpz_class lo_crit;
    mpz_class hi_crit;
    // floor((a - sqrt d)/den) and floor((a + sqrt d)/den), den > 0.
    mpz_class num = a - s - (square ? 0 : 1);
    mpz_fdiv_q(lo_crit.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    num = a + s;
    mpz_fdiv_q(hi_crit.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());

    out.push_back({std::nullopt, lo_crit, !flip});
    if (lo_crit + 1 <= hi_crit) out.push_back({mpz_class(lo_crit + 1), hi_crit, flip});
    out.push_back({mpz_class(hi_crit + 1), std::nullopt, !flip});
    return out;
}

namespace {

using Pred = std::function<bool(const mpz_class&)>;

// Smallest x in [lo, hi] with pred(x), pred monotone false -> true. Galloping
// from `start` handles unbounded ends.
std::optional<mpz_class> first_true(const Pred& pred, const std::optional<mpz_class>& lo,
                                    const std::optional<mpz_class>& hi, mpz_class start) {
    if (lo && start < *lo) start = *lo;
    if (hi && start > *hi) start = *hi;
    mpz_class t;  // pred(t) true
    mpz_class f;  // pred(f) false, f < t
    mpz_class step = 1;
    if (pred(start)) {
        t = start;
        for (;;) {
            mpz_class cand = t - step;
            if (lo && cand < *lo) {
                if (t == *lo) return t;
                cand = *lo;
                if (pred(cand)) return cand;
                f = cand;
                break;
            }
            if (!pred(cand)) {
                f = cand;
                break;
            }
            t = cand;
            step *= 2;
        }
    } else {
        f = start;
        for (;;) {
            mpz_class cand = f + step;
            if (hi && cand > *hi) {
                if (f == *hi) return std::nullopt;
                cand = *hi;
                if (!pred(cand)) return std::nullopt;
                t = cand;
                break;
            }
            if (pred(cand)) {
                t = cand;
                break;
            }
            f = cand;
            step *= 2;
        }
    }
    while (t - f > 1) {
        mpz_class mid = f + t;
        mpz_fdiv_q_2exp(mid.get_mpz_t(), mid.get_mpz_t(), 1);
        if (pred(mid)) {
            t = mid;
        } else {
            f = mid;
        }
    }
    return t;
}

}  // namespace

std::vector<mpz_class> small_value_points(const IntCubic& p, const mpz_class& bound,
                                          const std::optional<mpz_class>& hint) {
    std::vector<mpz_class> out;
    if (bound < 0) return out;
    for (const MonotonePiece& piece : monotone_pieces(p)) {
        // g is p or -p so that g increases on the piece; |g| = |p|.
        const bool inc = piece.increasing;
        auto g = [&](const mpz_class& x) {
            mpz_class v = p(x);
            return inc ? v : mpz_class(-v);
        };
        if (piece.hi && g(*piece.hi) < -bound) continue;
        if (piece.lo && g(*piece.lo) > bound) continue;
        mpz_class start = hint ? *hint : mpz_class(0);
        if (!hint) {
            if (piece.lo) start = *piece.lo;
            else if (piece.hi) start = *piece.hi;
        }
        auto first = first_true([&](const mpz_class& x) { return g(x) >= -bound; }, piece.lo, piece.hi, start);
        if (!first) continue;
        auto past = first_true([&](const mpz_class& x) { return g(x) > bound; }, *first, piece.hi, *first);
        mpz_class last;
        if (past) {
            last = *past - 1;
        } else {
            // g stays <= bound up to the (finite) right end of the piece.
            if (!piece.hi) throw Error(ErrorKind::InvalidParameter, "unbounded increasing piece never exceeds bound");
            last = *piece.hi;
        }
        for (mpz_class x = *first; x <= last; ++x) out.push_back(x);
    }
    return out;
}

std::vector<mpz_class> integer_roots(const IntCubic& p) {
    std::vector<mpz_class> out;
    for (const mpz_class& x : small_value_points(p, 0)) {
        if (p(x) == 0) out.push_back(x);
    }
    return out;
}

}  // namespace thuefam
