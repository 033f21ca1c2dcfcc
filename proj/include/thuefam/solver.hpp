#pragma once

// Complete search for 0 < |F_n(x, y)| <= k over a box in (n, y); x is never
// bounded, every integer x is covered. Two independent paths: an exact
// oracle that works on F_n(., y) as an integer cubic, and a pruned path that
// only evaluates x near the real and complex lines x = beta y, x = Re(beta') y.

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "thuefam/family.hpp"
#include "thuefam/reduction.hpp"

namespace thuefam {

struct SearchSpec {
    mpz_class k = 1;
    long n_lo = 0;
    long n_hi = 0;
    long y_max = 1;
    bool exclude_trivial = true;     ///< drop xy = 0
    bool exclude_degenerate = true;  ///< drop n with eps^n alpha rational

    /// Throws InvalidParameter for k < 0, n_lo > n_hi or y_max < 1.
    void validate() const;
};

struct SolutionRecord {
    long n = 0;
    mpz_class x;
    mpz_class y;
    mpz_class value;  ///< F_n(x, y)
    bool primitive = true;  ///< gcd(x, y) = 1
    std::optional<Decomposition> decomposition;

    /// Ordering and equality on (n, y, x); value follows from them.
    bool operator==(const SolutionRecord& o) const { return n == o.n && x == o.x && y == o.y && value == o.value; }
    bool operator<(const SolutionRecord& o) const;
};

struct SolveStats {
    long stripes = 0;    ///< (n, y) pairs visited
    long pruned = 0;     ///< stripes settled by the windows
    long fallback = 0;   ///< stripes handed to the oracle
    long evaluations = 0;  ///< exact evaluations on the pruned path
};

/// Exact search, sorted by (n, y, x).
std::vector<SolutionRecord> brute_force_oracle(const FormFamily& fam, const SearchSpec& spec);

/// Literal scan of |x| <= x_max; only for small boxes.
std::vector<SolutionRecord> exhaustive_box_scan(const FormFamily& fam, const SearchSpec& spec, long x_max);

/// Pruned search with the same output as brute_force_oracle. guard_bits is
/// the working precision beyond the size of beta y.
std::vector<SolutionRecord> solve_box(const FormFamily& fam, const SearchSpec& spec, long guard_bits = 64,
                                      SolveStats* stats = nullptr);

/// 0 < |N(x - beta_n y)| <= k, through field arithmetic rather than the form.
bool verify_record(const FormFamily& fam, const mpz_class& k, const SolutionRecord& r);

/// Fills the unit decomposition of x - beta_n y for every record.
void attach_decompositions(const FormFamily& fam, std::vector<SolutionRecord>& records, double eps = 1e-30);

struct SweepRow {
    mpz_class k;
    long count = 0;
    /// log max(eps^|n|, |x|, |y|) over the solutions; 0 when there are none.
    double log_max = 0.0;
    std::optional<SolutionRecord> argmax;
    /// log_max / log k, for k >= 2.
    std::optional<double> exponent;
    /// Solutions with y_max < |y| <= 2 y_max.
    long added_on_doubling = 0;
    bool box_stable = false;
};

struct Theorem1Sweep {
    std::vector<SweepRow> rows;
    bool nondecreasing = false;
    /// log k / log max over rows with k >= 2 and max > 1: the exponent in
    /// |F| >= kappa max^kappa4 that the data allows with kappa = 1.
    std::optional<double> kappa4;
};

/// k_list must be ascending; the template's k is ignored.
Theorem1Sweep theorem1_sweep(const FormFamily& fam, const std::vector<mpz_class>& k_list, const SearchSpec& tmpl);

}  // namespace thuefam
