#include "thuefam/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "thuefam/errors.hpp"
#include "thuefam/heights.hpp"

namespace thuefam {

void BakerConfig::validate() const {
    if (!(c0 > 0) || !(c1 > 0) || !(c2_default > 0)) {
        throw Error(ErrorKind::InvalidParameter, "Baker constants must be positive");
    }
}

namespace {

Interval num(double v, Prec p) { return Interval::from_double(v, p); }

bool at_least_one(const Interval& x) { return mpfr_cmp_ui(x.lo(), 1) >= 0; }

}  // namespace

Interval prop1_bound(const BakerConfig& cfg, long D, double logA0, double logA1, double logA2, double B, Prec prec) {
    cfg.validate();
    if (D < 1) throw Error(ErrorKind::InvalidParameter, "degree must be positive");
    const double inv = 1.0 / static_cast<double>(D);
    if (logA0 < inv || logA1 < inv || logA2 < inv) throw Error(ErrorKind::InvalidParameter, "log A_i < 1/D");
    if (!(B >= std::exp(1.0))) throw Error(ErrorKind::InvalidParameter, "B < e");
    const Interval d(D, prec);
    const Interval expo =
        num(cfg.c0, prec) * pow(d, 5) * log(d) * num(logA0, prec) * num(logA1, prec) * num(logA2, prec) * log(num(B, prec));
    return exp(-expo);
}

Interval prop2_bound(const BakerConfig& cfg, double h1, double h2, double B, Prec prec) {
    cfg.validate();
    if (!(B >= 2)) throw Error(ErrorKind::InvalidParameter, "B < 2");
    const Interval e = exp(Interval(1L, prec));
    const Interval a1 = max(e, num(h1, prec));
    const Interval a2 = max(e, num(h2, prec));
    return exp(-(num(cfg.c1, prec) * log(num(B, prec)) * a1 * a2));
}

Interval sine_bound(long n, double c2, Prec prec) {
    return exp(-(num(c2, prec) * log(Interval(std::labs(n) + 2, prec))));
}

std::pair<Interval, Interval> family_angles(const FormFamily& fam, long bits) {
    const Embedding a = embed_bits(fam.alpha(), bits);
    const Embedding e = embed_bits(fam.epsilon(), bits);
    return {arg(a.complex, Branch::Positive).value, arg(e.complex, Branch::Positive).value};
}

C2Calibration calibrate_c2(const Interval& delta1, const Interval& delta2, long N) {
    C2Calibration cal;
    cal.delta1 = delta1;
    cal.delta2 = delta2;
    cal.N = N;
    const Prec p = std::max(delta1.prec(), delta2.prec());
    double worst = 0.0;
    bool any = false;
    for (long m = 1; m <= N; ++m) {
        for (long n : {-m, m}) {
            const Interval s = abs(sin(delta1 + delta2 * n));
            if (s.contains_zero()) {
                cal.skipped.push_back(n);
                continue;
            }
            any = true;
            const double c = (-log(s) / log(Interval(m + 2, p))).upper();
            if (c > worst) {
                worst = c;
                cal.worst_n = n;
            }
        }
    }
    if (!any) throw Error(ErrorKind::DegenerateAngle, "no certified sine value");
    std::sort(cal.skipped.begin(), cal.skipped.end());
    // round up so the certified round trip survives the last enclosure
    cal.c2 = std::max(0.0, worst) * (1 + 1e-12) + 1e-15;
    return cal;
}

bool c2_round_trip(const C2Calibration& cal) {
    const Prec p = std::max(cal.delta1.prec(), cal.delta2.prec());
    for (long m = 1; m <= cal.N; ++m) {
        for (long n : {-m, m}) {
            const Interval s = abs(sin(cal.delta1 + cal.delta2 * n));
            if (s.contains_zero()) continue;
            if (!at_least_one(s * sine_bound(n, -cal.c2, p))) return false;
        }
    }
    return true;
}

ChainCheck corollary2_chain(const Interval& delta1, const Interval& delta2, long n, Prec prec) {
    const Prec p = std::max({prec, delta1.prec(), delta2.prec()});
    const Interval d1 = delta1.with_prec(p), d2 = delta2.with_prec(p);
    ChainCheck c;
    c.n = n;
    const Interval u = (d1 + d2 * n) / Interval::pi(p);
    // ceil(u - 1/2): nearest integer, the lower one on ties
    const Interval v = u - Interval(mpq_class(1, 2), p);
    c.ell = v.floor_lo().get_si() + 1;
    if (v.unique_integer()) c.ell = v.unique_integer()->get_si();
    c.sine_abs = abs(sin(d1 + d2 * n));
    const ComplexBox g1(cos(d1), sin(d1));
    const ComplexBox g2(cos(d2), sin(d2));
    const ComplexBox g = g1 * pow(g2, n);
    const ComplexBox one(Interval(1L, p), Interval(0L, p));
    const Interval half_sqrt2 = sqrt(Interval(2L, p)) / 2L;
    c.literal_rhs = half_sqrt2 * abs(g - one);
    const ComplexBox gs = (c.ell % 2 == 0) ? g : -g;
    c.corrected_rhs = half_sqrt2 * abs(gs - one);
    c.literal_holds = c.literal_rhs.certainly_le(c.sine_abs);
    c.literal_refuted = c.sine_abs.certainly_less(c.literal_rhs);
    c.corrected_holds = c.corrected_rhs.certainly_le(c.sine_abs);
    return c;
}

Lemma3Check lemma3a(const ComplexBox& t) {
    const Prec p = t.prec();
    const ComplexBox et = cexp(t);
    Lemma3Check r;
    r.lhs = abs(et - ComplexBox(Interval(1L, p), Interval(0L, p)));
    r.rhs = abs(t) * max(Interval(1L, p), abs(et));
    r.holds = r.lhs.certainly_le(r.rhs);
    r.margin = (r.rhs - r.lhs).lower();
    return r;
}

Lemma3Check lemma3b(const ComplexBox& z) {
    const Prec p = z.prec();
    const Interval d = abs(z - ComplexBox(Interval(1L, p), Interval(0L, p)));
    if (!d.certainly_less(Interval(mpq_class(1, 2), p))) throw Error(ErrorKind::OutOfDomain, "|z - 1| >= 1/2");
    const ComplexBox lz(log(abs(z)), arg(z).value);
    Lemma3Check r;
    r.lhs = abs(lz);
    r.rhs = d * 2L;
    r.holds = r.lhs.certainly_le(r.rhs);
    r.margin = (r.rhs - r.lhs).lower();
    return r;
}

ThirdCaseBound prop1_third_case(const BakerConfig& cfg, const FormFamily& fam, long n, const mpz_class& k,
                                const SolutionReduction& red, const LambdaData& lam) {
    ThirdCaseBound t;
    const Prec p = lam.Lambda.prec();
    const double D = static_cast<double>(t.degree);
    const Embedding e = embed(fam.epsilon(), 1e-30);
    // gamma1 = conj(eps') / eps' is a unit: height from its six conjugates
    const std::array<ComplexBox, 3> ec{ComplexBox(e.real, Interval(0L, e.real.prec())), e.complex, conj(e.complex)};
    std::array<int, 3> perm{0, 1, 2};
    std::vector<Interval> moduli;
    do {
        moduli.push_back(abs(ec[perm[2]] / ec[perm[1]]));
    } while (std::next_permutation(perm.begin(), perm.end()));
    const double h1 = log_height_from_conjugates(moduli).upper();
    // gamma2 = conj(mu_n) / mu_n: h <= 2 h(mu_n)
    const double h2 = (lam.height_mu * 2L).upper();
    t.logA0 = std::max(2 * M_PI / D, 1 / D);
    t.logA1 = std::max({h1, abs(lam.lambda1.im).upper() / D, 1 / D});
    t.logA2 = std::max({h2, abs(lam.lambda2.im).upper() / D, 1 / D});
    const double b0 = std::labs(lam.h), b1 = std::labs(red.dec.ell), b2 = 1;
    t.B = std::max({std::exp(1.0), D, b2 / (D * t.logA0) + b0 / (D * t.logA2),
                    b2 / (D * t.logA1) + b1 / (D * t.logA2)});
    mpz_class keff = k;
    if (keff < 2) keff = 2;
    const Interval lk = log(Interval(keff, p)) + log(e.real.with_prec(p)) * n;
    t.kappa51 = t.logA2 / lk.mid();
    t.bound = prop1_bound(cfg, t.degree, t.logA0, t.logA1, t.logA2, t.B, p);
    t.observed = abs(lam.Lambda.im);
    t.applicable = !t.observed.contains_zero();
    t.below_observed = t.applicable && t.bound.certainly_le(t.observed);
    return t;
}

C1Calibration calibrate_c1(const ComplexBox& gamma1, const ComplexBox& gamma2, double h1, double h2, long N) {
    C1Calibration cal;
    cal.h1 = h1;
    cal.h2 = h2;
    cal.N = N;
    const Prec p = gamma1.prec();
    const ComplexBox one(Interval(1L, p), Interval(0L, p));
    const Interval e = exp(Interval(1L, p));
    const Interval a12 = max(e, num(h1, p)) * max(e, num(h2, p));
    double worst = 0.0;
    ComplexBox g = gamma1;
    for (long b = 1; b <= N; ++b) {
        g = g * gamma2;
        const Interval d = abs(g - one);
        if (d.contains_zero()) {
            cal.skipped.push_back(b);
            continue;
        }
        const Interval B(std::max(2L, b), p);
        worst = std::max(worst, (-log(d) / (log(B) * a12)).upper());
    }
    cal.c1 = worst * (1 + 1e-12) + 1e-15;
    return cal;
}

}  // namespace thuefam
