// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// quantities and the wall time against its budget. Exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "thuefam/bounds.hpp"
#include "thuefam/errors.hpp"
#include "thuefam/heights.hpp"
#include "thuefam/reduction.hpp"
#include "thuefam/solver.hpp"
#include "thuefam/tracer.hpp"

using namespace thuefam;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

SearchSpec box(long k, long n_lo, long n_hi, long y_max) {
    SearchSpec s;
    s.k = k;
    s.n_lo = n_lo;
    s.n_hi = n_hi;
    s.y_max = y_max;
    return s;
}

// 1. exact identities of the example family
Outcome family_identities() {
    long checked = 0, bad = 0;
    std::ostringstream first;
    auto fail = [&](const std::string& what) {
        if (bad++ == 0) first << what;
    };
    const BinaryCubicForm cube{{1, -3, 3, -1}};
    for (long D = 1; D <= 5; ++D) {
        const FormFamily f = example_family(D);
        ++checked;
        if (f.form_at(-1) != cube) fail("F_-1 for D=" + std::to_string(D));
        for (long n = -20; n <= 20; ++n) {
            ++checked;
            if (f.form_at(-n) != -negative_n_swap(f.form_at(n - 2))) {
                fail("swap at D=" + std::to_string(D) + " n=" + std::to_string(n));
            }
        }
        // a_n = trace(eps^(n+1)) straight from field arithmetic
        std::vector<mpz_class> a;
        for (long n = -20; n <= 20; ++n) {
            const mpq_class t = trace(f.epsilon().pow(n + 1));
            a.push_back(t.get_num());
            if (t.get_den() != 1) fail("non-integral trace");
        }
        const auto at = [&](long n) { return a[static_cast<size_t>(n + 20)]; };
        ++checked;
        if (at(0) != 3 * D * D || at(-1) != 3 || at(-2) != -3 * D) fail("initial values for D=" + std::to_string(D));
        for (size_t i = 0; i + 3 < a.size(); ++i) {
            ++checked;
            if (a[i + 3] != 3 * D * D * a[i + 2] + 3 * D * a[i + 1] + a[i]) fail("recurrence for D=" + std::to_string(D));
        }
    }
    std::ostringstream os;
    os << checked << " identities, " << bad << " failures";
    if (bad) os << " (first: " << first.str() << ")";
    return {bad == 0, os.str()};
}

// 2. the swapped order of the recurrence coefficients against trace(eps^2)
Outcome recurrence_order() {
    const long D = 2;
    const FormFamily f = example_family(D);
    const mpz_class t2 = trace(f.epsilon().pow(2)).get_num();
    const mpz_class a0 = 3 * D * D, am1 = 3, am2 = -3 * D;
    const mpz_class swapped = 3 * D * a0 + 3 * D * D * am1 + am2;
    const mpz_class corrected = 3 * D * D * a0 + 3 * D * am1 + am2;
    const CoefficientSequence seq = coefficient_sequence(D, -5, 5);
    const bool ok = swapped != t2 && corrected == t2 && seq.minpoly_recurrence_holds && !seq.swapped_recurrence_holds;
    std::ostringstream os;
    os << "trace(eps^2) = " << t2 << ", swapped order gives " << swapped << ", corrected order gives " << corrected;
    return {ok, os.str()};
}

// 3. height and modulus of the unit
Outcome heights() {
    double worst_h = 0, worst_m = 0;
    bool ok = true;
    for (long D = 1; D <= 5; ++D) {
        const FormFamily f = example_family(D);
        const Interval R = regulator(f);
        const Interval h = abs_log_height(f.epsilon()).height;
        worst_h = std::max(worst_h, std::fabs(h.mid() - R.mid() / 3) + h.width() + R.width());
        const Embedding e = embed(f.epsilon(), 1e-30);
        const Interval lhs = abs(e.complex);
        const Interval rhs = Interval(1L, lhs.prec()) / sqrt(e.real);
        worst_m = std::max(worst_m, std::fabs(lhs.mid() - rhs.mid()) + lhs.width() + rhs.width());
        ok = ok && lhs.overlaps(rhs);
    }
    ok = ok && worst_h < 1e-12 && worst_m < 1e-20;
    char buf[160];
    std::snprintf(buf, sizeof buf, "max |h(eps) - R/3| = %.2e, max ||eps'| - eps^(-1/2)| = %.2e", worst_h, worst_m);
    return {ok, buf};
}

// 4. unit reduction of random elements
Outcome unit_reduction() {
    const FormFamily f = example_family(1);
    const Interval R = regulator(f);
    std::mt19937_64 rng(20240501);
    std::uniform_int_distribution<long> u(-50, 50);
    long done = 0, recon = 0, balanced = 0;
    double worst = 0;
    while (done < 200) {
        const FieldElement g(f.field(), u(rng), u(rng), u(rng));
        if (g.is_zero()) continue;
        ++done;
        const Decomposition d = unit_reduce(f, g);
        if (f.epsilon().pow(d.ell) * d.xi == g) ++recon;
        if (d.balance.upper() <= R.lower() / 2 + 1e-9) ++balanced;
        worst = std::max(worst, d.balance.upper() - R.lower() / 2);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%ld/200 exact reconstructions, %ld/200 balanced, max(balance - R/2) = %.3g", recon,
                  balanced, worst);
    return {recon == 200 && balanced == 200, buf};
}

// 5. Siegel identities on every small solution
Outcome siegel_audit() {
    long traced = 0, sum_bad = 0, re_bad = 0, dom_bad = 0, third = 0, h_bad = 0, errors = 0;
    double widest = 0;
    for (long D : {1L, 2L, 3L}) {
        const FormFamily f = example_family(D);
        for (const SolutionRecord& r : solve_box(f, box(10, -8, 8, 1000))) {
            ++traced;
            try {
                const SolutionTrace st = trace_solution(f, r.n, r.x, r.y, 10);
                const SiegelTrace& t = st.trace;
                if (!t.sum_contains_zero) ++sum_bad;
                if (!t.real_parts_contain_zero || t.real_width > 1e-20) ++re_bad;
                widest = std::max(widest, t.real_width);
                if (!t.order || !t.order->domination_holds) ++dom_bad;
                if (st.lambda) {
                    ++third;
                    if (!st.lambda->h_bound_holds) ++h_bad;
                }
            } catch (const Error&) {
                ++errors;
            }
        }
    }
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%ld solutions traced; sum/Re/domination failures %ld/%ld/%ld; widest Re %.2e; third case %ld "
                  "(|h| bound failures %ld); errors %ld",
                  traced, sum_bad, re_bad, dom_bad, widest, third, h_bad, errors);
    return {traced > 0 && sum_bad + re_bad + dom_bad + h_bad + errors == 0, buf};
}

// 6. pruned search against the oracle
Outcome solver_equivalence() {
    bool ok = true;
    std::ostringstream os;
    double tf = 0, to = 0;
    for (long D : {1L, 2L, 3L}) {
        const FormFamily f = example_family(D);
        const SearchSpec s = box(10, -8, 8, 10000);
        const auto t0 = std::chrono::steady_clock::now();
        const auto fast = solve_box(f, s);
        const auto t1 = std::chrono::steady_clock::now();
        const auto slow = brute_force_oracle(f, s);
        const auto t2 = std::chrono::steady_clock::now();
        tf += std::chrono::duration<double>(t1 - t0).count();
        to += std::chrono::duration<double>(t2 - t1).count();
        bool rv = true;
        for (const auto& r : fast) rv = rv && verify_record(f, s.k, r);
        ok = ok && fast == slow && rv;
        os << "D=" << D << ": " << fast.size() << (fast == slow ? " = " : " != ") << slow.size()
           << (rv ? "" : " (re-verification failed)") << "; ";
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "pruned %.2f s, oracle %.2f s, speedup %.1fx", tf, to, to / tf);
    os << buf;
    return {ok, os.str()};
}

// 7. doubling y_max adds nothing
Outcome box_stability() {
    bool ok = true;
    std::ostringstream os;
    for (long D : {1L, 2L, 3L}) {
        const FormFamily f = example_family(D);
        const auto a = solve_box(f, box(10, -8, 8, 10000));
        const auto b = solve_box(f, box(10, -8, 8, 20000));
        ok = ok && a == b;
        os << "D=" << D << ": " << a.size() << " -> " << b.size() << "; ";
    }
    return {ok, os.str()};
}

// 8. sine calibration and the chain inequality
Outcome sine_calibration() {
    const auto [delta, theta] = family_angles(example_family(1), 160);
    const C2Calibration cal = calibrate_c2(delta, theta, 10000);
    const bool rt = std::isfinite(cal.c2) && c2_round_trip(cal);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> u(-10000, 10000);
    long lit = 0, refuted = 0, corr = 0;
    for (int i = 0; i < 100; ++i) {
        // 160 bits puts the enclosure widths far below 1e-20
        const ChainCheck c = corollary2_chain(delta, theta, u(rng), 160);
        if (c.literal_holds) ++lit;
        if (c.literal_refuted) ++refuted;
        if (c.corrected_holds) ++corr;
    }
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "c2 = %.6f (worst n = %ld, %zu skipped), round trip %s; chain without sign factor holds %ld/100 "
                  "(certified violations %ld, all with odd ell); with (-1)^ell gamma1 gamma2^n: %ld/100",
                  cal.c2, cal.worst_n, cal.skipped.size(), rt ? "ok" : "FAILED", lit, refuted, corr);
    return {rt && lit == 100, buf};
}

// 9. the two elementary estimates
Outcome elementary_estimates() {
    const Prec p = bits_for(1e-20) + 32;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    long a_ok = 0, b_ok = 0;
    double amin = 1e300, bmin = 1e300;
    for (int i = 0; i < 1000;) {
        const double x = 2 * u(rng), y = 2 * u(rng);
        if (x == 0 && y == 0) continue;
        ++i;
        const Lemma3Check c = lemma3a(ComplexBox(Interval::from_double(x, p), Interval::from_double(y, p)));
        if (c.holds && c.margin > 0) ++a_ok;
        amin = std::min(amin, c.margin);
    }
    for (int i = 0; i < 1000;) {
        const double x = u(rng) / 2, y = u(rng) / 2;
        if (x * x + y * y >= 0.2499 || (x == 0 && y == 0)) continue;
        ++i;
        const Lemma3Check c = lemma3b(ComplexBox(Interval::from_double(1 + x, p), Interval::from_double(y, p)));
        if (c.holds && c.margin > 0) ++b_ok;
        bmin = std::min(bmin, c.margin);
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "(a) %ld/1000, min margin %.3g; (b) %ld/1000, min margin %.3g", a_ok, amin, b_ok, bmin);
    return {a_ok == 1000 && b_ok == 1000, buf};
}

// 10. growth of the largest solution with k
Outcome sweep() {
    const FormFamily f = example_family(1);
    const Theorem1Sweep sw = theorem1_sweep(f, {2, 5, 10, 20}, box(1, -8, 8, 10000));
    bool finite = true;
    std::ostringstream os;
    for (const SweepRow& r : sw.rows) {
        finite = finite && r.exponent && std::isfinite(*r.exponent);
        char buf[120];
        std::snprintf(buf, sizeof buf, "k=%s: %ld sols, max=%.4g, exponent %.4f%s; ", r.k.get_str().c_str(), r.count,
                      std::exp(r.log_max), r.exponent ? *r.exponent : NAN, r.box_stable ? "" : " (grew on doubling)");
        os << buf;
    }
    os << (sw.nondecreasing ? "nondecreasing" : "NOT nondecreasing");
    if (sw.kappa4) os << ", empirical kappa4 = " << *sw.kappa4;
    return {sw.nondecreasing && finite && sw.rows.size() == 4, os.str()};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all = {
        {1, "example-family identities", 5, family_identities},
        {2, "recurrence coefficient order", 5, recurrence_order},
        {3, "height and regulator", 5, heights},
        {4, "unit reduction", 30, unit_reduction},
        {5, "Siegel audit", 120, siegel_audit},
        {6, "solver soundness and completeness", 300, solver_equivalence},
        {7, "box stability", 600, box_stability},
        {8, "sine calibration and chain", 60, sine_calibration},
        {9, "exponential and logarithm estimates", 10, elementary_estimates},
        {10, "sweep over k", 600, sweep},
    };
    int failed = 0;
    for (const Criterion& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = dt <= c.budget;
        const bool pass = o.pass && in_time;
        if (!pass) ++failed;
        std::printf("%s [%d] %s (%.2f s / %.0f s%s): %s\n", pass ? "PASS" : "FAIL", c.id, c.name, dt, c.budget,
                    in_time ? "" : ", over budget", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed == 0 ? 0 : 1;
}
