#include "doctest.h"

#include <cmath>
#include <complex>
#include <tuple>

#include "oracles.hpp"
#include "thuefam/errors.hpp"
#include "thuefam/tracer.hpp"

using namespace thuefam;

namespace {

using LD = long double;
using CLD = std::complex<LD>;

ComplexBox box(double re, double im) { return ComplexBox(Interval::from_double(re, 64), Interval::from_double(im, 64)); }

// Small solutions by a plain scan of a box.
std::vector<std::tuple<long, long, long>> scan(const FormFamily& f, long k, long xmax, long ymax) {
    std::vector<std::tuple<long, long, long>> out;
    for (long n = -8; n <= 8; ++n) {
        if (f.is_degenerate(n)) continue;
        const BinaryCubicForm F = f.form_at(n);
        for (long y = -ymax; y <= ymax; ++y) {
            for (long x = -xmax; x <= xmax; ++x) {
                if (x == 0 || y == 0) continue;
                const mpz_class v = F(x, y);
                if (v != 0 && abs(v) <= k) out.emplace_back(n, x, y);
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("classify_terms on constructed triples") {
    TermOrder o = classify_terms({box(2, 0), box(-1.5, 0), box(-0.5, 0)});
    CHECK(o.pair == TermCase::T1T2);
    CHECK(o.order == std::array<int, 3>{0, 1, 2});
    CHECK(o.domination_holds);
    o = classify_terms({box(0, 3), box(0, -1), box(0, -2)});
    CHECK(o.pair == TermCase::T1T3);
    CHECK(o.order == std::array<int, 3>{0, 2, 1});
    CHECK(o.domination_holds);
    CHECK(std::fabs(o.domination_margin - 1.0) < 1e-12);
    CHECK_THROWS_AS(classify_terms({box(1, 0), box(1, 0), box(-2, 0)}), Error);
    o = classify_terms({box(1, 0.25), box(-1, 0.25), box(0, -0.5)});
    CHECK_FALSE(o.top_pair_certain);
}

TEST_CASE("trace of (n, x, y) = (0, 1, -1) for D = 1") {
    const FormFamily f = example_family(1);
    const SolutionTrace st = trace_solution(f, 0, 1, -1, 2);
    const SiegelTrace& t = st.trace;
    CHECK(st.reduction.value == 2);
    CHECK(t.sum_contains_zero);
    CHECK(t.real_parts_contain_zero);
    CHECK(t.real_width <= 1e-20);
    CHECK(t.forms_agree);
    CHECK(t.form_gap < 1e-20);
    REQUIRE(t.order.has_value());
    CHECK(t.order->domination_holds);

    // independent long double evaluation of the sine forms
    const LD th = oracle::real_root(3, 3, -1);
    const CLD thc = oracle::complex_root(3, 3, -1);
    const LD e = 1 / th;
    const CLD ec = LD(1) / thc;
    CHECK(std::fabs(std::abs(ec) - 1 / std::sqrt(e)) < 1e-15);
    const auto& xi = st.reduction.dec.xi.coords();
    const LD xr = xi[0].get_d() + xi[1].get_d() * th + xi[2].get_d() * th * th;
    const CLD xc = LD(xi[0].get_d()) + LD(xi[1].get_d()) * thc + LD(xi[2].get_d()) * thc * thc;
    const long l = t.ell;
    const CLD el = std::pow(ec, static_cast<int>(l));
    // alpha = eps, n = 0
    const CLD T1 = std::pow(e, LD(l)) * xr * (ec - std::conj(ec));
    const CLD T2 = e * (std::conj(el * xc) - el * xc);
    const CLD T3 = el * xc * std::conj(ec) - std::conj(el * xc) * ec;
    CHECK(std::fabs(static_cast<double>(T1.imag()) - t.T[0].im.mid()) < 1e-12 * (1 + std::abs(T1)));
    CHECK(std::fabs(static_cast<double>(T2.imag()) - t.T[1].im.mid()) < 1e-12 * (1 + std::abs(T2)));
    CHECK(std::fabs(static_cast<double>(T3.imag()) - t.T[2].im.mid()) < 1e-12 * (1 + std::abs(T3)));
    CHECK(std::abs(T1 + T2 + T3) < 1e-12L);
    CHECK(t.theta.contains(static_cast<double>(std::arg(ec) < 0 ? std::arg(ec) + 2 * M_PIl : std::arg(ec))) ==
          (t.theta.width() > 1e-16));
    CHECK(std::fabs(t.theta.mid() - static_cast<double>(std::arg(ec) < 0 ? std::arg(ec) + 2 * M_PIl : std::arg(ec))) <
          1e-15);
}

TEST_CASE("Siegel identities over small solutions") {
    for (long D : {1L, 2L, -2L}) {
        const FormFamily f = example_family(D);
        const auto sols = scan(f, 10, 400, 12);
        CHECK_FALSE(sols.empty());
        for (const auto& [n, x, y] : sols) {
            const SolutionTrace st = trace_solution(f, n, x, y, 10);
            const SiegelTrace& t = st.trace;
            CHECK(t.sum_contains_zero);
            CHECK(t.real_parts_contain_zero);
            CHECK(t.real_width <= 1e-20);
            CHECK(t.forms_agree);
            REQUIRE(t.order.has_value());
            CHECK(t.order->domination_holds);
            for (bool d : t.degenerate_sine) CHECK_FALSE(d);
            for (const auto& r : st.ledger) {
                if (r.applicable && r.holds.has_value()) CHECK_MESSAGE(*r.holds, "row " << r.id);
                if (r.empirical) CHECK(std::isfinite(r.empirical->mid()));
            }
            if (n < 0) {
                REQUIRE_FALSE(st.ledger.empty());
                CHECK(st.ledger.front().id == "swap");
            }
            if (t.order->pair == TermCase::T2T3) {
                REQUIRE(st.lambda.has_value());
                const LambdaData& L = *st.lambda;
                CHECK(L.h_bound_holds);
                CHECK(L.identity_residual.upper() < 1e-20 * (1 + abs(t.T[1]).upper()));
                // e^Lambda - 1 against a direct exponential of the enclosure
                const ComplexBox direct = cexp(L.Lambda) - ComplexBox(Interval(1L, 128), Interval(0L, 128));
                CHECK(direct.re.overlaps(L.e_Lambda_minus_one.re));
                CHECK(direct.im.overlaps(L.e_Lambda_minus_one.im));
                if (L.lemma3b_applicable) CHECK(L.lemma3b_holds);
                CHECK(L.nu.lower() >= 0);
                CHECK(L.nu.upper() < 1);
                CHECK(std::isfinite(L.kappa46.mid()));
            } else {
                CHECK_FALSE(st.lambda.has_value());
                CHECK_THROWS_AS(lambda_machinery(f, n, st.reduction, t, 10), Error);
            }
        }
    }
}

TEST_CASE("third-case data against a long double oracle") {
    const FormFamily f = example_family(1);
    const LD th = oracle::real_root(3, 3, -1);
    const CLD thc = oracle::complex_root(3, 3, -1);
    const LD e = 1 / th;
    const CLD ec = LD(1) / thc;
    int seen = 0;
    for (const auto& [n, x, y] : scan(f, 10, 400, 12)) {
        const SolutionTrace st = trace_solution(f, n, x, y, 10);
        if (!st.lambda) continue;
        ++seen;
        const auto& xi = st.reduction.dec.xi.coords();
        const CLD xc = LD(xi[0].get_d()) + LD(xi[1].get_d()) * thc + LD(xi[2].get_d()) * thc * thc;
        const CLD bc = std::pow(ec, static_cast<int>(n + 1));
        const LD b = std::pow(e, LD(n + 1));
        const CLD mu = xc * (std::conj(bc) - b);
        const CLD w = mu * std::pow(ec, static_cast<int>(st.trace.ell));
        const LD Lam = std::arg(std::conj(w) / w);
        LD nu = std::arg(std::conj(ec) / ec) / (2 * M_PIl);
        if (nu < 0) nu += 1;
        LD tn = std::arg(std::conj(mu) / mu) / (2 * M_PIl);
        if (tn < 0) tn += 1;
        const LD h = Lam / (2 * M_PIl) - st.trace.ell * nu - tn;
        CHECK(std::fabs(static_cast<double>(h) - st.lambda->h) < 1e-9);
        CHECK(std::fabs(static_cast<double>(nu) - st.lambda->nu.mid()) < 1e-15);
        CHECK(std::fabs(static_cast<double>(Lam) - st.lambda->Lambda.im.mid()) < 1e-12);
    }
    CHECK(seen > 0);
}

TEST_CASE("ledger branches") {
    // Q(cbrt 2) with eps = 1 + cbrt2 + cbrt4: the real term does not dominate at n = 0
    const FormFamily f = family_from_form({{1, 0, 0, -2}}, {1, 1, 1});
    const SolutionTrace st = trace_solution(f, 0, 1, 1, 2);
    const auto find = [&](const std::string& id) {
        for (const auto& r : st.ledger) {
            if (r.id == id) return r;
        }
        FAIL("missing row " << id);
        return LedgerRow{};
    };
    CHECK(find("real_term_dominant").holds == std::optional<bool>(false));
    CHECK(find("real_term_small").applicable);
    CHECK(find("real_term_small").holds == std::optional<bool>(true));
    CHECK(find("n_vs_log_ell").applicable);
    CHECK_FALSE(find("n_vs_two_thirds_ell").applicable);

    const FormFamily g = example_family(1);
    const SolutionTrace neg = trace_solution(g, -3, 1, 1, 1000000);
    CHECK(neg.ledger.front().id == "swap");
    CHECK(neg.ledger.front().note.find("(3, -1, 1)") != std::string::npos);
    CHECK_THROWS_AS(trace_solution(g, 0, 7, 3, 2), Error);
    try {
        trace_solution(g, -1, 1, 2, 10);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateN);
    }
}

TEST_CASE("precision cap") {
    const FormFamily f = example_family(1);
    TraceConfig cfg;
    cfg.max_bits = 100;
    CHECK_THROWS_AS(trace_solution(f, 0, 1, -1, 2, cfg), Error);
    try {
        trace_solution(f, 0, 1, -1, 2, cfg);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PrecisionExhausted);
    }
}
