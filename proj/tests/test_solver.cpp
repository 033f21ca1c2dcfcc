#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "thuefam/errors.hpp"
#include "thuefam/solver.hpp"

using namespace thuefam;

namespace {

SearchSpec box(const mpz_class& k, long n_lo, long n_hi, long y_max) {
    SearchSpec s;
    s.k = k;
    s.n_lo = n_lo;
    s.n_hi = n_hi;
    s.y_max = y_max;
    return s;
}

using Key = std::tuple<long, mpz_class, mpz_class>;

std::set<Key> keys(const std::vector<SolutionRecord>& v) {
    std::set<Key> s;
    for (const auto& r : v) s.emplace(r.n, r.x, r.y);
    return s;
}

}  // namespace

TEST_CASE("oracle on the small example box") {
    const FormFamily f = example_family(1);
    const auto sols = brute_force_oracle(f, box(2, -5, 5, 50));
    const auto it = std::find_if(sols.begin(), sols.end(), [](const SolutionRecord& r) {
        return r.n == 0 && r.x == 1 && r.y == -1;
    });
    REQUIRE(it != sols.end());
    CHECK(it->value == 2);
    CHECK(it->primitive);
    for (const auto& r : sols) CHECK(r.n != -1);
    CHECK(std::is_sorted(sols.begin(), sols.end()));
    CHECK(brute_force_oracle(f, box(0, -5, 5, 50)).empty());
    CHECK(solve_box(f, box(0, -5, 5, 50)).empty());
    CHECK_THROWS_AS(brute_force_oracle(f, box(-1, 0, 0, 5)), Error);
    CHECK_THROWS_AS(brute_force_oracle(f, box(1, 1, 0, 5)), Error);
    CHECK_THROWS_AS(brute_force_oracle(f, box(1, 0, 0, 0)), Error);
}

TEST_CASE("oracle against a literal scan") {
    for (long D : {1L, 2L, -2L}) {
        const FormFamily f = example_family(D);
        SearchSpec s = box(10, -2, 2, 5);
        // every solution has |x| <= |beta| |y| + k^(1/3) < y_max max|beta| + k
        double bmax = 0;
        for (long n = s.n_lo; n <= s.n_hi; ++n) {
            bmax = std::max(bmax, embed_bits(f.beta(n), 64).real.mag());
        }
        const long X = s.y_max * static_cast<long>(std::ceil(bmax)) + 10;
        CHECK(brute_force_oracle(f, s) == exhaustive_box_scan(f, s, X));
        s.exclude_trivial = false;
        s.exclude_degenerate = false;
        CHECK(brute_force_oracle(f, s) == exhaustive_box_scan(f, s, X));
    }
}

TEST_CASE("pruned search equals the oracle") {
    std::vector<FormFamily> fams = {example_family(1), example_family(2), example_family(3), example_family(-2),
                                    family_from_form({{1, 0, 0, -2}}, {1, 1, 1})};
    for (const FormFamily& f : fams) {
        const SearchSpec s = box(10, -8, 8, 300);
        SolveStats st;
        const auto fast = solve_box(f, s, 64, &st);
        const auto slow = brute_force_oracle(f, s);
        CHECK(fast == slow);
        CHECK(st.fallback == 0);
        CHECK(st.pruned == st.stripes);
        // most stripes need no evaluation at all
        CHECK(st.evaluations < st.stripes);
        for (const auto& r : fast) {
            CHECK(verify_record(f, 10, r));
            CHECK(f.form_at(r.n)(r.x, r.y) == r.value);
        }
    }
    const FormFamily f = example_family(1);
    SearchSpec s = box(5, -3, 3, 40);
    s.exclude_trivial = false;
    s.exclude_degenerate = false;
    SolveStats st;
    const auto all = solve_box(f, s, 64, &st);
    CHECK(all == brute_force_oracle(f, s));
    // n = -1 and y = 0 go to the oracle
    CHECK(st.fallback == 2 * 40 + 1 + 6);
    const bool has_line = std::any_of(all.begin(), all.end(), [](const SolutionRecord& r) {
        return r.n == -1 && r.x == r.y + 1;
    });
    CHECK(has_line);
}

TEST_CASE("records are closed under (x, y) -> (-x, -y)") {
    const FormFamily f = example_family(2);
    const auto sols = solve_box(f, box(10, -8, 8, 500));
    const auto ks = keys(sols);
    CHECK_FALSE(ks.empty());
    for (const auto& r : sols) {
        CHECK(ks.count({r.n, -r.x, -r.y}) == 1);
        CHECK(r.primitive == (gcd(r.x, r.y) == 1));
    }
}

TEST_CASE("negative n against the swapped family") {
    const FormFamily f = example_family(1);
    const FormFamily g = swapped_family(f);
    const mpz_class s = g.scale();
    const long Y = 200;
    for (long m = 2; m <= 5; ++m) {
        const auto a = solve_box(f, box(10, -m, -m, Y));
        const auto b = solve_box(g, box(10 * s * s, m, m, Y));
        std::set<Key> from_f, from_g;
        for (const auto& r : a) {
            if (abs(r.x) <= Y) from_f.emplace(m, s * r.y, r.x);
        }
        for (const auto& r : b) {
            if (abs(r.x) <= abs(s) * Y) from_g.emplace(m, r.x, r.y);
        }
        CHECK(from_f == from_g);
    }
}

TEST_CASE("decompositions of found solutions") {
    const FormFamily f = example_family(1);
    auto sols = solve_box(f, box(10, -3, 3, 50));
    attach_decompositions(f, sols);
    for (const auto& r : sols) {
        REQUIRE(r.decomposition);
        const FieldElement g = FieldElement(f.field(), mpq_class(r.x)) - mpq_class(r.y) * f.beta(r.n);
        CHECK(f.epsilon().pow(r.decomposition->ell) * r.decomposition->xi == g);
        CHECK(r.decomposition->norm_abs == abs(r.value));
    }
}

TEST_CASE("sweep over k") {
    const FormFamily f = example_family(1);
    const Theorem1Sweep sw = theorem1_sweep(f, {1, 2, 5, 10}, box(1, -8, 8, 200));
    REQUIRE(sw.rows.size() == 4);
    CHECK(sw.nondecreasing);
    for (size_t i = 1; i < sw.rows.size(); ++i) {
        CHECK(sw.rows[i].count >= sw.rows[i - 1].count);
        CHECK(sw.rows[i].log_max >= sw.rows[i - 1].log_max);
        REQUIRE(sw.rows[i].exponent);
        CHECK(std::isfinite(*sw.rows[i].exponent));
        CHECK(sw.rows[i].box_stable);
    }
    CHECK_FALSE(sw.rows[0].exponent);
    REQUIRE(sw.kappa4);
    CHECK(*sw.kappa4 > 0);
    // the counts agree with a direct solve
    CHECK(sw.rows[3].count == static_cast<long>(solve_box(f, box(10, -8, 8, 200)).size()));
    CHECK_THROWS_AS(theorem1_sweep(f, {5, 2}, box(1, -1, 1, 5)), Error);
}
