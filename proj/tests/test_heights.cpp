#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "thuefam/errors.hpp"
#include "thuefam/heights.hpp"

using namespace thuefam;

namespace {

std::vector<mpz_class> mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// eps of the D-family from the long double oracle
double eps_oracle(long D) { return 1.0 / static_cast<double>(oracle::real_root(3.0L * D, 3.0L * D * D, -1)); }

}  // namespace

TEST_CASE("Mahler measure of small polynomials") {
    Interval m = mahler_measure({1, -2});
    CHECK(m.lower() == 2.0);
    CHECK(m.upper() == 2.0);
    Interval c = mahler_measure({1, 0, 1});
    CHECK(c.contains(1.0));
    CHECK(c.width() < 1e-25);
    CHECK_THROWS_AS(mahler_measure({0, 0}), Error);
    // minimal polynomial of eps for D = 1
    Interval e = mahler_measure({1, -3, -3, -1});
    CHECK(std::fabs(e.mid() - eps_oracle(1)) < 1e-14);
    // repeated factors: (X - 3)^2 (X^2 + X + 1) has M = 9
    Interval r = mahler_measure(mul(mul({1, -3}, {1, -3}), {1, 1, 1}));
    CHECK(r.contains(9.0));
    CHECK(r.width() < 1e-20);
    // 2 X^2 - 1: M = 2 (roots inside the unit disk)
    CHECK(mahler_measure({2, 0, -1}).contains(2.0));
}

TEST_CASE("squarefree decomposition") {
    auto f = squarefree_decomposition(mul(mul({1, -1}, {1, -1}), mul({1, 2}, {1, 0, 1})));
    REQUIRE(f.size() == 2);
    CHECK(f[0].second == 1);
    CHECK(f[0].first.size() == 4);
    CHECK(f[1].second == 2);
    CHECK(f[1].first == std::vector<mpq_class>{1, -1});
}

TEST_CASE("Mahler measure is multiplicative on cyclotomic products") {
    const std::vector<std::vector<mpz_class>> cyc = {
        {1, -1}, {1, 1}, {1, 1, 1}, {1, 0, 1}, {1, 1, 1, 1, 1}, {1, -1, 1}, {1, 0, 0, 1, 0, 0, 1}};
    const std::vector<std::vector<mpz_class>> base = {{1, -3, -3, -1}, {1, 0, 0, -2}, {3, 1, -5}, {1, 6, 12, -1}};
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<size_t> pick(0, cyc.size() - 1);
    std::uniform_int_distribution<size_t> pickb(0, base.size() - 1);
    for (int t = 0; t < 50; ++t) {
        std::vector<mpz_class> p = base[pickb(rng)];
        Interval mb = mahler_measure(p, 1e-20);
        std::vector<mpz_class> q = p;
        const int k = 1 + static_cast<int>(t % 3);
        for (int i = 0; i < k; ++i) q = mul(q, cyc[pick(rng)]);
        Interval mq = mahler_measure(q, 1e-20);
        CHECK(mq.overlaps(mb));
        CHECK(std::fabs(mq.mid() - mb.mid()) < 1e-15 * mb.mid());
    }
}

TEST_CASE("heights of simple elements") {
    CubicField k = make_field({1, 3, 3, -1});
    HeightReport h1 = abs_log_height(FieldElement::one(k));
    CHECK(h1.height.contains(0.0));
    CHECK(h1.degree_used == 1);
    HeightReport h2 = abs_log_height(FieldElement(k, 2));
    CHECK(std::fabs(h2.height.mid() - std::log(2.0)) < 1e-15);
    CHECK(abs_log_height(FieldElement(k, mpq_class(-3, 7))).height.contains(abs_log_height(FieldElement(k, 7)).height.mid()) == false);
    CHECK(std::fabs(abs_log_height(FieldElement(k, mpq_class(-3, 7))).height.mid() - std::log(7.0)) < 1e-15);
    CHECK_THROWS_AS(abs_log_height(FieldElement(k, 0)), Error);
}

TEST_CASE("heights and regulators of the example family") {
    for (long D = 1; D <= 5; ++D) {
        const FormFamily fam = example_family(D);
        const Interval R = regulator(fam);
        CHECK(std::fabs(R.mid() - std::log(eps_oracle(D))) < 1e-13);
        const HeightReport h = abs_log_height(fam.epsilon());
        CHECK(h.degree_used == 3);
        CHECK(std::fabs(h.height.mid() - R.mid() / 3) < 1e-12);
        CHECK(h.height.width() < 1e-20);
        for (long m = -10; m <= 10; ++m) {
            const HeightReport hm = abs_log_height(fam.epsilon().pow(m));
            CHECK(std::fabs(hm.height.mid() - std::labs(m) * h.height.mid()) < 1e-12);
        }
        CHECK(std::fabs(mahler_measure(fam.epsilon().min_poly()).mid() - std::exp(R.mid())) < 1e-10 * std::exp(R.mid()));
    }
    CHECK(std::fabs(regulator(example_family(1)).mid() - 1.3473773483) < 1e-9);
    CHECK(std::fabs(std::exp(regulator(example_family(2)).mid()) - 12.4869) < 1e-4);
    const FormFamily f1 = example_family(1);
    const Interval r2 = regulator(f1.epsilon().pow(2));
    CHECK(r2.overlaps(regulator(f1) * 2L));
    CHECK_THROWS_AS(regulator(FieldElement(f1.field(), 2)), Error);
    CHECK_THROWS_AS(regulator(f1.epsilon().inverse()), Error);
}

TEST_CASE("field discriminant bound via Dedekind") {
    CHECK(cubic_discriminant({1, 3, 3, -1}) == -108);
    CHECK(field_discriminant_lower_bound({1, 3, 3, -1}) == 108);
    CHECK(cubic_discriminant({1, 6, 12, -1}) == -2187);
    // Z[alpha] is not 3-maximal here; the true field discriminant is -243.
    const mpz_class b2 = field_discriminant_lower_bound({1, 6, 12, -1});
    CHECK(b2 <= 243);
    CHECK(b2 >= 23);
    CHECK(field_discriminant_lower_bound({1, 0, 0, -2}) == 108);
}

TEST_CASE("fundamentality certificates") {
    const FormFamily f1 = example_family(1);
    FundamentalityCertificate c1 = check_fundamental(f1);
    CHECK(c1.status == Fundamentality::ProvedFundamental);
    CHECK(c1.method == "artin");
    CHECK(c1.poly_disc == -108);
    CHECK(std::fabs(c1.artin_rhs.mid() - 54.2) < 0.1);
    CHECK(c1.margin > 50);
    for (long D : {2L, 4L, 5L, 6L}) {
        FundamentalityCertificate c = check_fundamental(example_family(D));
        CHECK(c.status == Fundamentality::ProvedFundamental);
    }
    // For D = 3 eps is the square of a root of X^3 - 5X^2 - X - 1.
    FundamentalityCertificate c3 = check_fundamental(example_family(3));
    CHECK(c3.status == Fundamentality::Unknown);
    REQUIRE(c3.unresolved.size() == 1);
    CHECK(c3.unresolved[0] == "m=2 t=5 s=-1 N=1");
    const FieldElement eta = FieldElement::generator(CubicField({1, -5, -1, -1}));
    CHECK(eta.pow(2).min_poly() == example_family(3).epsilon().min_poly());
    FundamentalityCertificate sq = check_fundamental(f1.epsilon().pow(2));
    CHECK(sq.status == Fundamentality::Unknown);
    CHECK_FALSE(sq.unresolved.empty());
    FundamentalityCertificate cube = check_fundamental(example_family(2).epsilon().pow(3));
    CHECK(cube.status == Fundamentality::Unknown);
    CHECK_THROWS_AS(check_fundamental(FieldElement(f1.field(), 3)), Error);
}
