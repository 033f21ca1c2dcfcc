#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "thuefam/cubicfield.hpp"
#include "thuefam/errors.hpp"

using namespace thuefam;

namespace {

ErrorKind kind_of(const Cubic& f) {
    try {
        make_field(f);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidParameter;
}

FieldElement random_element(const CubicField& k, std::mt19937_64& rng, int lo = -100, int hi = 100) {
    std::uniform_int_distribution<int> d(lo, hi);
    return FieldElement(k, d(rng), d(rng), d(rng));
}

}  // namespace

TEST_CASE("make_field validation") {
    CHECK(kind_of({2, 0, 0, -2}) == ErrorKind::NonMonic);
    CHECK(kind_of({1, 0, -3, 1}) == ErrorKind::TotallyReal);
    CHECK(kind_of({1, 0, 0, -8}) == ErrorKind::ReduciblePolynomial);
    CHECK(kind_of({1, 3, 3, 1}) == ErrorKind::ReduciblePolynomial);
    CHECK(cubic_discriminant({1, 0, -3, 1}) == 81);
    CHECK(cubic_discriminant({1, 3, 3, -1}) == -108);
}

TEST_CASE("root isolation of X^3 - 2") {
    CubicField k = make_field({1, 0, 0, -2});
    auto [lo, hi] = k.real_root_isolation(16);
    CHECK(lo >= mpq_class(125, 100));
    CHECK(hi <= mpq_class(126, 100));
    const long double cbrt2 = oracle::real_root(0, 0, -2);
    CHECK(cbrt2 > 1.25L);
    CHECK(cbrt2 < 1.26L);
    Interval r = k.real_root(100);
    CHECK(r.width() < 1e-29);
    CHECK(std::fabs(r.mid() - static_cast<double>(cbrt2)) < 1e-15);
    ComplexBox z = k.complex_root(100);
    CHECK(z.im.is_positive());
    CHECK(std::fabs(z.re.mid() + static_cast<double>(cbrt2) / 2) < 1e-15);
    auto box = k.complex_root_isolation(40);
    CHECK(box[0] <= box[1]);
    CHECK(box[2] > 0);
}

TEST_CASE("example field for D = 1") {
    // X^3 + 3X^2 + 3X - 1 has real root 1/eps, eps = 1/(cbrt2 - 1)
    CubicField k = make_field({1, 3, 3, -1});
    CHECK(k.disc() == -108);
    const double a = static_cast<double>(oracle::real_root(3, 3, -1));
    CHECK(std::fabs(a - 0.2599210498948732) < 1e-15);
    FieldElement alpha = FieldElement::generator(k);
    FieldElement eps = alpha.inverse();
    CHECK(norm(eps) == 1);
    Embedding e = embed(eps, 1e-12);
    CHECK(e.real.width() <= 1e-12);
    const double expect = 1.0 / (std::cbrt(2.0) - 1.0);
    CHECK(std::fabs(e.real.mid() - expect) < 1e-12);
    // |sigma(eps)| = eps^(-1/2)
    Embedding f = embed(eps, 1e-25);
    Interval lhs = abs(f.complex);
    Interval rhs = Interval(1L, lhs.prec()) / sqrt(f.real);
    CHECK(lhs.overlaps(rhs));
    CHECK(std::fabs(house(eps, 1e-12).mid() - expect) < 1e-12);
}

TEST_CASE("trace of eps for D = 2") {
    // eps^-1 is a root of X^3 + 6X^2 + 12X - 1
    CubicField k = make_field({1, 6, 12, -1});
    FieldElement eps = FieldElement::generator(k).inverse();
    CHECK(trace(eps) == 12);
    CHECK(trace(FieldElement::one(k)) == 3);
    const double root = static_cast<double>(oracle::real_root(-12, -6, -1));
    CHECK(std::fabs(root - 12.4868) < 1e-3);
    CHECK(embed(eps, 1e-20).real.contains(Interval::from_double(root, 64)) == false);
    CHECK(std::fabs(embed(eps, 1e-20).real.mid() - root) < 1e-12);
}

TEST_CASE("defining relation and ring identities") {
    CubicField k = make_field({1, 0, 0, -2});
    FieldElement a = FieldElement::generator(k);
    CHECK(a * (a * a) == FieldElement(k, 2));
    FieldElement one = FieldElement::one(k);
    CHECK((one + a) * (one - a) == one - a * a);
    CHECK(a.inverse() * a == one);
    CHECK_THROWS_AS(one / FieldElement(k, 0), Error);
    CHECK(std::fabs(house(a, 1e-15).mid() - std::cbrt(2.0)) < 1e-14);
    CHECK(house(one, 1e-10).lower() == 1.0);
    CHECK(house(one, 1e-10).upper() == 1.0);
    Embedding e1 = embed(one, 1e-5);
    CHECK(e1.real.is_point());
    CHECK(e1.real.lower() == 1.0);
    CHECK_THROWS_AS(house(FieldElement(k, 0), 1e-5), Error);
}

TEST_CASE("norm and trace against resultant and embeddings") {
    std::mt19937_64 rng(12345);
    const Cubic fs[] = {{1, 3, 3, -1}, {1, 0, 0, -2}, {1, 6, 12, -1}, {1, -1, 1, 5}};
    for (const Cubic& f : fs) {
        CubicField k = make_field(f);
        for (int t = 0; t < 250; ++t) {
            FieldElement x = random_element(k, rng);
            if (x.is_zero()) continue;
            const mpq_class n = norm(x);
            CHECK(n == oracle::resultant_norm(f, x.coords()));
            CHECK(n * norm(x.inverse()) == 1);
            Embedding e = embed(x, 1e-30);
            Interval prod = e.real * norm_sq(e.complex);
            Interval sum = e.real + e.complex.re * 2L;
            Interval nn(n, prod.prec());
            Interval tt(trace(x), sum.prec());
            CHECK(prod.overlaps(nn));
            CHECK(sum.overlaps(tt));
        }
    }
}

TEST_CASE("trace of powers matches Newton identities") {
    const Cubic f = {1, -3, -3, -1};
    CubicField k = make_field(f);
    FieldElement a = FieldElement::generator(k);
    for (int j = 0; j <= 15; ++j) CHECK(trace(a.pow(j)) == oracle::trace_power(f, j));
}

TEST_CASE("exact arithmetic round trips") {
    std::mt19937_64 rng(7);
    CubicField k = make_field({1, 3, 3, -1});
    for (int t = 0; t < 200; ++t) {
        FieldElement x = random_element(k, rng);
        FieldElement y = random_element(k, rng);
        FieldElement z = random_element(k, rng);
        CHECK((x + y) - y == x);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        if (!y.is_zero()) CHECK((x / y) * y == x);
    }
}

TEST_CASE("embedding refinement is monotone") {
    CubicField k = make_field({1, 3, 3, -1});
    FieldElement x(k, 2, -1, 5);
    double prev = 1.0;
    for (double eps = 1e-3; eps > 1e-40; eps /= 2) {
        Embedding e = embed(x, eps);
        CHECK(e.real.width() <= eps);
        CHECK(e.complex.width() <= eps);
        CHECK(e.real.width() <= prev);
        prev = e.real.width();
    }
}

TEST_CASE("accepted fields have negative discriminant and no rational root") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> d(-20, 20);
    int accepted = 0;
    for (int t = 0; t < 400; ++t) {
        Cubic f = {1, d(rng), d(rng), d(rng)};
        try {
            CubicField k = make_field(f);
            ++accepted;
            CHECK(k.disc() < 0);
            CHECK_FALSE(oracle::has_rational_root(f));
        } catch (const Error& e) {
            CHECK((e.kind() == ErrorKind::TotallyReal || e.kind() == ErrorKind::ReduciblePolynomial));
            if (e.kind() == ErrorKind::ReduciblePolynomial) CHECK(oracle::has_rational_root(f));
        }
    }
    CHECK(accepted > 100);
}

TEST_CASE("minimal polynomial and integrality") {
    CubicField k = make_field({1, 0, 0, -2});
    FieldElement a = FieldElement::generator(k);
    CHECK(a.min_poly() == std::vector<mpz_class>{1, 0, 0, -2});
    CHECK(FieldElement(k, mpq_class(3, 2)).min_poly() == std::vector<mpz_class>{2, -3});
    CHECK((mpq_class(1, 2) * a).min_poly() == std::vector<mpz_class>{4, 0, 0, -1});
    CHECK(a.is_integral());
    CHECK_FALSE((mpq_class(1, 2) * a).is_integral());
}
