#include "thuefam/verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <tuple>

#include "thuefam/bounds.hpp"
#include "thuefam/heights.hpp"
#include "thuefam/solver.hpp"

namespace thuefam {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

CheckResult check(std::string name, bool ok, std::string detail = {}) {
    return CheckResult{std::move(name), ok, std::move(detail)};
}

void example_identities(long D, const FormFamily& fam, long span, std::vector<CheckResult>& out) {
    const BinaryCubicForm cube{{1, -3, 3, -1}};
    out.push_back(check("F_-1 = (X - Y)^3", fam.form_at(-1) == cube, fam.form_at(-1).to_string()));
    long bad = 0;
    long first_bad = 0;
    for (long n = -span; n <= span; ++n) {
        if (!swap_identity_check(fam, n).holds && bad++ == 0) first_bad = n;
    }
    out.push_back(check("F_-n(X, Y) = -F_(n-2)(Y, X)", bad == 0,
                        bad ? "first failure at n = " + std::to_string(first_bad) : ""));
    const CoefficientSequence seq = coefficient_sequence(D, -span, span);
    out.push_back(check("a_n = trace(eps^(n+1)) satisfies the recurrence", seq.minpoly_recurrence_holds));
    const bool init = seq.at(0) == 3 * D * D && seq.at(-1) == 3 && seq.at(-2) == -3 * D;
    out.push_back(check("a_0 = 3D^2, a_-1 = 3, a_-2 = -3D", init));
    bool coeff = true;
    for (long n = -span; n <= span; ++n) coeff = coeff && fam.form_at(n).a[1] == -seq.at(n);
    out.push_back(check("F_n = X^3 - a_n X^2 Y + ...", coeff));
}

void solver_checks(const FormFamily& fam, long y_max, std::vector<CheckResult>& out) {
    SearchSpec s;
    s.k = 10;
    s.n_lo = -4;
    s.n_hi = 4;
    s.y_max = y_max;
    const auto fast = solve_box(fam, s);
    const auto slow = brute_force_oracle(fam, s);
    const std::string box = "k = 10, n in [-4, 4], |y| <= " + std::to_string(y_max);
    out.push_back(check("solve_box = oracle (" + box + ")", fast == slow,
                        std::to_string(fast.size()) + " vs " + std::to_string(slow.size()) + " solutions"));
    bool ok = true;
    std::set<std::tuple<long, mpz_class, mpz_class>> keys;
    for (const auto& r : fast) {
        ok = ok && verify_record(fam, s.k, r);
        keys.emplace(r.n, r.x, r.y);
    }
    out.push_back(check("records re-verify 0 < |F_n(x, y)| <= k", ok));
    bool sym = true;
    for (const auto& r : fast) sym = sym && keys.count({r.n, -r.x, -r.y}) == 1;
    out.push_back(check("solutions closed under (x, y) -> (-x, -y)", sym));
}

}  // namespace

std::vector<CheckResult> verify_family(const FormFamily& fam, const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    if (fam.D()) example_identities(*fam.D(), fam, opt.n_span, out);

    const Interval R = regulator(fam);
    const HeightReport h = abs_log_height(fam.epsilon());
    const double gap = std::fabs(h.height.mid() - R.mid() / 3);
    out.push_back(check("h(eps) = R / 3", gap < 1e-12, "gap " + sci(gap)));

    const Embedding e = embed(fam.epsilon(), 1e-30);
    const Interval lhs = abs(e.complex);
    const Interval rhs = Interval(1L, lhs.prec()) / sqrt(e.real);
    const double mgap = std::fabs(lhs.mid() - rhs.mid());
    out.push_back(check("|eps'| = eps^(-1/2)", lhs.overlaps(rhs) && mgap < 1e-20, "gap " + sci(mgap)));

    solver_checks(fam, opt.deep ? 2000 : 200, out);

    if (opt.deep) {
        const auto [delta, theta] = family_angles(fam);
        const C2Calibration cal = calibrate_c2(delta, theta, 10000);
        out.push_back(check("c2 calibration round trip (N = 10^4)", c2_round_trip(cal),
                            "c2 = " + sci(cal.c2) + " at n = " + std::to_string(cal.worst_n)));
        std::mt19937_64 rng(1);
        std::uniform_int_distribution<long> u(-10000, 10000);
        bool chain = true;
        for (int i = 0; i < 100; ++i) chain = chain && corollary2_chain(delta, theta, u(rng)).corrected_holds;
        out.push_back(check("|sin(d1 + n d2)| >= (sqrt 2 / 2) |(-1)^l g1 g2^n - 1|", chain));
    }
    return out;
}

std::vector<CheckResult> verify_recorded_forms(const FormFamily& fam,
                                               const std::vector<std::pair<long, std::string>>& forms) {
    std::vector<CheckResult> out;
    for (const auto& [n, s] : forms) {
        const std::string got = fam.form_at(n).to_string();
        out.push_back(check("recorded F_" + std::to_string(n), got == s, "expected " + s + ", computed " + got));
    }
    return out;
}

}  // namespace thuefam
