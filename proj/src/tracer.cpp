#include "thuefam/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thuefam/errors.hpp"
#include "thuefam/heights.hpp"

namespace thuefam {

std::string to_string(TermCase c) {
    switch (c) {
    case TermCase::T1T2: return "T1T2_dominant";
    case TermCase::T1T3: return "T1T3_dominant";
    case TermCase::T2T3: return "T2T3_dominant";
    }
    return "?";
}

TermOrder classify_terms(const std::array<ComplexBox, 3>& t) {
    const std::array<Interval, 3> m{abs(t[0]), abs(t[1]), abs(t[2])};
    int s = -1;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        if (m[i].certainly_less(m[j]) && m[i].certainly_less(m[k])) s = i;
    }
    if (s < 0) throw Error(ErrorKind::AmbiguousOrdering, "smallest term not separated");
    int a = (s + 1) % 3, b = (s + 2) % 3;
    TermOrder o;
    if (m[b].certainly_less(m[a])) {
        o.top_pair_certain = true;
    } else if (m[a].certainly_less(m[b])) {
        std::swap(a, b);
        o.top_pair_certain = true;
    } else if (m[b].mid() > m[a].mid()) {
        std::swap(a, b);
    }
    o.order = {a, b, s};
    o.pair = s == 0 ? TermCase::T2T3 : s == 1 ? TermCase::T1T3 : TermCase::T1T2;
    const Interval d1 = m[b] * 2L - m[a];
    const Interval d2 = m[a] * 2L - m[b];
    o.domination_holds = mpfr_sgn(d1.lo()) >= 0 && mpfr_sgn(d2.lo()) >= 0;
    o.domination_margin = std::min(d1.lower(), d2.lower());
    return o;
}

TermOrder classify_case(const SiegelTrace& trace) {
    if (!trace.order) throw Error(ErrorKind::AmbiguousOrdering, "ordering not certified at the precision cap");
    return *trace.order;
}

namespace {

ComplexBox real_box(const Interval& r) { return ComplexBox(r, Interval(0L, r.prec())); }

// Enclosures of every conjugate the argument needs, at one precision.
struct Conjugates {
    Prec bits = 0;
    Interval eps;      // sigma_real(eps)
    ComplexBox epsc;   // eps'
    Interval beta;     // eps^n alpha
    ComplexBox betac;  // eps'^n alpha'
    Interval alpha;
    ComplexBox alphac;
    Interval epsl;     // eps^ell
    ComplexBox epslc;  // eps'^ell
    Interval xi;
    ComplexBox xic;
};

Conjugates conjugates(const FormFamily& fam, long n, long ell, const FieldElement& xi, long bits) {
    const FieldElement& e = fam.epsilon();
    const Embedding ee = embed_bits(e, bits);
    const Embedding eb = embed_bits(fam.beta(n), bits);
    const Embedding ea = embed_bits(fam.alpha(), bits);
    const Embedding el = embed_bits(e.pow(ell), bits);
    const Embedding ex = embed_bits(xi, bits);
    return {bits, ee.real, ee.complex, eb.real, eb.complex, ea.real, ea.complex,
            el.real, el.complex, ex.real, ex.complex};
}

// Rough log2 of the sizes involved, to pick a starting precision.
long magnitude_bits(const FormFamily& fam, long n, long ell, const FieldElement& xi) {
    const double le = std::log2(std::max(2.0, embed_bits(fam.epsilon(), 64).real.mid()));
    long coords = 0;
    for (const auto& c : xi.coords()) {
        coords = std::max<long>(coords, static_cast<long>(mpz_sizeinbase(c.get_num_mpz_t(), 2)));
        coords = std::max<long>(coords, static_cast<long>(mpz_sizeinbase(c.get_den_mpz_t(), 2)));
    }
    return static_cast<long>(std::ceil((std::labs(n) + std::labs(ell) + 4) * le)) + coords +
           fam.field().root_bound_bits() * 2;
}

Interval eps_power(const Interval& eps, const mpq_class& q) { return exp(log(eps) * Interval(q, eps.prec())); }

Interval arg_positive(const ComplexBox& z) { return arg(z, Branch::Positive).value; }

}  // namespace

SiegelTrace siegel_terms(const FormFamily& fam, long n, const Decomposition& dec, const TraceConfig& cfg) {
    const long ell = dec.ell;
    long bits = std::max<long>(128, bits_for(cfg.eps) + 32 + magnitude_bits(fam, n, ell, dec.xi));
    if (bits > cfg.max_bits) {
        throw Error(ErrorKind::PrecisionExhausted,
                    "needs " + std::to_string(bits) + " bits, cap is " + std::to_string(cfg.max_bits));
    }
    SiegelTrace tr;
    tr.n = n;
    tr.ell = ell;
    const bool beta_rational = fam.is_degenerate(n);
    for (;; bits *= 2) {
        const Conjugates c = conjugates(fam, n, ell, dec.xi, bits);
        const Prec p = c.eps.prec();
        tr.bits = p;
        const ComplexBox B = c.epslc * c.xic;  // eps'^ell xi1' = x - beta' y
        tr.T[0] = real_box(c.epsl * c.xi) * (c.betac - conj(c.betac));
        tr.T[1] = real_box(c.beta) * (conj(B) - B);
        const ComplexBox Bb = B * conj(c.betac);
        tr.T[2] = Bb - conj(Bb);

        tr.theta = arg_positive(c.epsc);
        tr.delta = arg_positive(c.alphac);
        tr.v = arg_positive(c.xic);
        const Interval aa = abs(c.alphac);
        const Interval xa = abs(c.xic);
        tr.sines[0] = sin(tr.delta + tr.theta * n);
        tr.sines[1] = sin(tr.v + tr.theta * ell);
        tr.sines[2] = sin(tr.v - tr.delta + tr.theta * (ell - n));
        const Interval zero(0L, p);
        tr.T_sine[0] = ComplexBox(zero, c.xi * aa * eps_power(c.eps, mpq_class(2 * ell - n, 2)) * tr.sines[0] * 2L);
        tr.T_sine[1] = ComplexBox(zero, -(xa * c.alpha * eps_power(c.eps, mpq_class(2 * n - ell, 2)) * tr.sines[1] * 2L));
        tr.T_sine[2] = ComplexBox(zero, xa * aa * eps_power(c.eps, mpq_class(-(n + ell), 2)) * tr.sines[2] * 2L);

        tr.sum = tr.T[0] + tr.T[1] + tr.T[2];
        tr.sum_contains_zero = tr.sum.contains_zero();
        tr.real_width = 0.0;
        tr.real_parts_contain_zero = true;
        tr.forms_agree = true;
        tr.form_gap = 0.0;
        for (int i = 0; i < 3; ++i) {
            tr.real_width = std::max(tr.real_width, tr.T[i].re.width());
            tr.real_parts_contain_zero = tr.real_parts_contain_zero && tr.T[i].re.contains_zero();
            tr.forms_agree = tr.forms_agree && tr.T[i].im.overlaps(tr.T_sine[i].im);
            tr.form_gap = std::max(tr.form_gap, std::fabs(tr.T[i].im.mid() - tr.T_sine[i].im.mid()));
            tr.degenerate_sine[i] = tr.sines[i].contains_zero();
        }
        // T1 vanishes exactly when eps^n alpha is rational
        if (beta_rational) tr.degenerate_sine[0] = true;
        try {
            tr.order = classify_terms(tr.T);
        } catch (const Error&) {
            tr.order.reset();
        }
        const bool certified = tr.real_parts_contain_zero && tr.real_width <= cfg.real_tol;
        if (certified && tr.order) break;
        if (bits * 2 > cfg.max_bits) {
            if (!certified) throw Error(ErrorKind::PrecisionExhausted, "real parts of the terms not certified");
            break;
        }
    }
    return tr;
}

// ---------------------------------------------------------------------------

namespace {

struct LedgerInput {
    long n;
    mpz_class x, y, k;
    long ell;
    Conjugates c;
    std::optional<TermCase> pair;
};

LedgerRow row(std::string id, std::string statement) {
    LedgerRow r;
    r.id = std::move(id);
    r.statement = std::move(statement);
    return r;
}

std::optional<bool> certainly(const Interval& lhs, const Interval& rhs, bool strict) {
    if (strict ? lhs.certainly_less(rhs) : lhs.certainly_le(rhs)) return true;
    if (strict ? rhs.certainly_le(lhs) : rhs.certainly_less(lhs)) return false;
    return std::nullopt;
}

void ledger_rows(const LedgerInput& in, std::vector<LedgerRow>& rows) {
    const Conjugates& c = in.c;
    const Prec p = c.eps.prec();
    const long n = in.n, ell = in.ell, al = std::labs(ell);
    const Interval logk = log(Interval(in.k, p));
    const Interval eps = c.eps;
    const Interval a = abs(c.alpha), ac = abs(c.alphac);
    const Interval xi = abs(c.xi), xic = abs(c.xic);
    const Interval ay(mpz_class(abs(in.y)), p), ax(mpz_class(abs(in.x)), p);
    const Interval one(1L, p);
    const Interval epsn = eps_power(eps, n);

    LedgerRow r_dom = row("real_term_dominant", "eps^n |alpha| >= 2 |eps'^n alpha'|");
    r_dom.lhs = epsn * a;
    r_dom.rhs = eps_power(eps, mpq_class(-n, 2)) * ac * 2L;
    r_dom.holds = certainly(*r_dom.rhs, *r_dom.lhs, false);
    r_dom.empirical = *r_dom.lhs / (eps_power(eps, mpq_class(-n, 2)) * ac);
    r_dom.note = "right side read as |eps'^n alpha'|; empirical = ratio eps^n|alpha| / |eps'^n alpha'|";
    const bool dom = r_dom.holds.value_or(false);
    rows.push_back(r_dom);

    LedgerRow r_small = row("real_term_small", "eps^(3n/2) < 2 |alpha'| / |alpha|");
    r_small.applicable = !dom;
    r_small.lhs = eps_power(eps, mpq_class(3 * n, 2));
    r_small.rhs = ac * 2L / a;
    if (r_small.applicable) {
        r_small.holds = certainly(*r_small.lhs, *r_small.rhs, true);
        r_small.note = "the real term does not dominate: only the n vs log |ell| row applies";
    }
    rows.push_back(r_small);

    // A, B of y = +-(A - a)/(B - b)
    const Interval A = max(c.epsl * xi, abs(c.epslc) * xic);
    const Interval Bm = epsn * a;
    const Interval ybound = A * 4L / Bm;

    LedgerRow r_y = row(ell <= 0 ? "y_bound_ell_nonpos" : "y_bound_ell_pos", "|y| <= 4 |A| / |B|");
    r_y.applicable = dom;
    r_y.lhs = ay;
    r_y.rhs = ybound;
    if (dom) r_y.holds = certainly(ay, ybound, false);
    r_y.empirical = ay / eps_power(eps, ell <= 0 ? mpq_class(mpq_class(al, 2) - n) : mpq_class(ell - n));
    r_y.note = ell <= 0 ? "empirical = |y| eps^(n - |ell|/2) (kappa12 k^kappa9)"
                       : "empirical = |y| eps^(n - ell) (kappa17 k^kappa9)";
    rows.push_back(r_y);

    if (ell <= 0) {
        LedgerRow r_half = row("n_vs_half_ell", "n <= |ell|/2 + kappa14 log k");
        r_half.applicable = dom;
        r_half.empirical = Interval(mpq_class(mpq_class(n) - mpq_class(al, 2)), p) / logk;
        rows.push_back(r_half);

        LedgerRow r_xneg = row("x_bound_ell_nonpos", "|x| <= eps^(-n/2) |alpha' y| + |xi1'| eps^(|ell|/2)");
        r_xneg.lhs = ax;
        r_xneg.rhs = eps_power(eps, mpq_class(-n, 2)) * ac * ay + xic * eps_power(eps, mpq_class(al, 2));
        r_xneg.holds = certainly(*r_xneg.lhs, *r_xneg.rhs, false);
        r_xneg.empirical = xic;
        r_xneg.note = "empirical = |xi1'| (kappa15 k^kappa9)";
        rows.push_back(r_xneg);
    } else {
        LedgerRow r_nell = row("n_vs_ell", "n <= ell + kappa19 log k");
        r_nell.applicable = dom;
        r_nell.empirical = Interval(mpq_class(n - ell), p) / logk;
        rows.push_back(r_nell);

        LedgerRow r_xpos = row("x_bound_ell_pos", "|x| <= eps^(-n/2) |alpha' y| + |xi1'| eps^(-ell/2)");
        r_xpos.lhs = ax;
        r_xpos.rhs = eps_power(eps, mpq_class(-n, 2)) * ac * ay + xic * eps_power(eps, mpq_class(-ell, 2));
        r_xpos.holds = certainly(*r_xpos.lhs, *r_xpos.rhs, false);
        r_xpos.empirical = xic;
        r_xpos.note = "empirical = |xi1'| (kappa20 k^kappa9)";
        rows.push_back(r_xpos);

        const Interval small = abs(c.epslc) * xic;
        LedgerRow r_low = row("ell_lower_bound", "1 <= 8 |xi1 alpha' / alpha| eps^(ell - 3n/2)");
        r_low.applicable = dom && small.certainly_less(Interval(mpq_class(1, 2), p));
        r_low.lhs = one;
        r_low.rhs = xi * ac / a * eps_power(eps, mpq_class(2 * ell - 3 * n, 2)) * 8L;
        if (r_low.applicable) r_low.holds = certainly(one, *r_low.rhs, false);
        r_low.empirical = Interval(mpq_class(mpq_class(3 * n, 2) - ell), p) / logk;
        r_low.note = "applies when |eps'^ell xi1'| < 1/2; empirical = kappa24 in (3/2) n <= ell + kappa24 log k";
        rows.push_back(r_low);
    }

    LedgerRow r_two3 = row("n_vs_two_thirds_ell", "n <= (2/3)|ell| + kappa25 log k");
    r_two3.applicable = dom;
    r_two3.empirical = Interval(mpq_class(mpq_class(n) - mpq_class(2 * al, 3)), p) / logk;
    rows.push_back(r_two3);

    LedgerRow r_diff = row("ell_minus_n", "|ell - n| >= |ell|/3 - kappa24 log k");
    r_diff.applicable = dom;
    r_diff.empirical = Interval(mpq_class(mpq_class(al, 3) - std::labs(ell - n)), p) / logk;
    rows.push_back(r_diff);

    LedgerRow r_log = row("n_vs_log_ell", "n <= kappa44 (log k + log |ell|)");
    r_log.applicable = !dom || (in.pair && *in.pair == TermCase::T2T3);
    r_log.empirical = Interval(n, p) / (logk + log(Interval(std::max(1L, al), p)));
    r_log.note = "log |ell| taken as log max(1, |ell|)";
    rows.push_back(r_log);
}

}  // namespace

std::vector<LedgerRow> inequality_ledger(const FormFamily& fam, long n, const mpz_class& x, const mpz_class& y,
                                         const mpz_class& k, const SolutionReduction& red,
                                         const SiegelTrace& trace, const TraceConfig& cfg) {
    std::vector<LedgerRow> rows;
    mpz_class keff = k;
    if (keff < 2) keff = 2;
    if (n < 0) {
        const FormFamily sw = swapped_family(fam);
        const mpz_class s = sw.scale();
        const mpz_class x2 = s * y;
        const mpz_class k2 = keff * s * s;
        LedgerRow r = row("swap", "n < 0: rows evaluated for G(X, Y) = F(Y, X) at |n|");
        std::ostringstream os;
        os << "(n, x, y) = (" << -n << ", " << x2.get_str() << ", " << x.get_str() << "), k = " << k2.get_str();
        r.note = os.str();
        rows.push_back(r);
        const SolutionReduction red2 = decompose_solution(sw, -n, x2, x, k2, cfg.eps);
        const SiegelTrace tr2 = siegel_terms(sw, -n, red2.dec, cfg);
        LedgerInput in{-n, x2, x, k2, red2.dec.ell, conjugates(sw, -n, red2.dec.ell, red2.dec.xi, tr2.bits),
                       std::nullopt};
        if (tr2.order) in.pair = tr2.order->pair;
        ledger_rows(in, rows);
        return rows;
    }
    LedgerInput in{n, x, y, keff, red.dec.ell, conjugates(fam, n, red.dec.ell, red.dec.xi, trace.bits),
                   std::nullopt};
    if (trace.order) in.pair = trace.order->pair;
    ledger_rows(in, rows);
    return rows;
}

// ---------------------------------------------------------------------------

LambdaData lambda_machinery(const FormFamily& fam, long n, const SolutionReduction& red, const SiegelTrace& trace,
                            const mpz_class& k, const TraceConfig& cfg) {
    if (classify_case(trace).pair != TermCase::T2T3) throw Error(ErrorKind::NotThirdCase, "T2, T3 not dominant");
    const long ell = red.dec.ell;
    mpz_class keff = k;
    if (keff < 2) keff = 2;
    for (long bits = trace.bits;; bits *= 2) {
        const Conjugates c = conjugates(fam, n, ell, red.dec.xi, bits);
        const Prec p = c.eps.prec();
        LambdaData L;
        L.ell_negative = ell < 0;
        L.rho_n = real_box(c.xi) * (c.betac - conj(c.betac));
        L.mu_n = c.xic * (conj(c.betac) - real_box(c.beta));
        const ComplexBox w = L.mu_n * c.epslc;
        const ComplexBox q1 = conj(c.epsc) / c.epsc;
        const ComplexBox q2 = conj(L.mu_n) / L.mu_n;
        const ComplexBox qL = conj(w) / w;
        const Angle a1 = arg(q1), a2 = arg(q2), aL = arg(qL);
        const Angle p1 = arg(q1, Branch::Positive), p2 = arg(q2, Branch::Positive);
        const bool on_cut = a1.straddles_cut || a2.straddles_cut || aL.straddles_cut || p1.straddles_cut ||
                            p2.straddles_cut;
        const Interval zero(0L, p);
        const Interval two_pi = Interval::pi(p) * 2L;
        L.lambda1 = ComplexBox(zero, a1.value);
        L.lambda2 = ComplexBox(zero, a2.value);
        L.Lambda = ComplexBox(zero, aL.value);
        L.nu = p1.value / two_pi;
        L.theta_n = p2.value / two_pi;
        const Interval hp = aL.value / two_pi - L.nu * ell - L.theta_n;
        const Interval hq = (aL.value - a1.value * ell - a2.value) / two_pi;
        const auto h1 = hp.unique_integer();
        const auto h2 = hq.unique_integer();
        if (on_cut || !h1 || !h2) {
            if (bits * 2 > cfg.max_bits) throw Error(ErrorKind::PrecisionExhausted, "logarithm on its branch cut");
            continue;
        }
        L.h = h1->get_si();
        L.h_principal = h2->get_si();
        L.h_bound_holds = std::labs(L.h) <= std::labs(ell) + 2 && std::labs(L.h_principal) <= std::labs(ell) + 2;

        L.identity_residual = abs(L.rho_n * c.epsl + w - conj(w));
        L.e_Lambda_minus_one = qL - real_box(Interval(1L, p));
        const Interval em1 = abs(L.e_Lambda_minus_one);
        const Interval absL = abs(aL.value);
        L.lemma3b_applicable = em1.certainly_less(Interval(mpq_class(1, 2), p));
        L.lemma3b_holds = absL.certainly_le(em1 * 2L);
        L.lemma3b_margin = (em1 * 2L - absL).lower();

        L.ratio = abs(L.rho_n * c.epsl / w);
        const Interval logk = log(Interval(keff, p));
        Interval structure = eps_power(c.eps, mpq_class(-(n + 3 * std::labs(ell)), 2));
        if (red.kappa9) structure *= exp(red.kappa9->with_prec(p) * logk);
        L.ratio_shape = structure;
        L.kappa49 = L.ratio / structure;

        // conjugates of mu_n over the Galois closure: permute the three embeddings
        const std::array<ComplexBox, 3> b{real_box(c.beta), c.betac, conj(c.betac)};
        const std::array<ComplexBox, 3> x{real_box(c.xi), c.xic, conj(c.xic)};
        std::array<int, 3> perm{0, 1, 2};
        std::vector<Interval> moduli;
        do {
            moduli.push_back(abs(x[perm[1]] * (b[perm[2]] - b[perm[0]])));
        } while (std::next_permutation(perm.begin(), perm.end()));
        L.height_mu = log_height_from_conjugates(moduli);
        L.kappa46 = L.height_mu / (Interval(std::labs(n), p) + logk);
        return L;
    }
}

SolutionTrace trace_solution(const FormFamily& fam, long n, const mpz_class& x, const mpz_class& y,
                             const mpz_class& k, const TraceConfig& cfg) {
    SolutionReduction red = decompose_solution(fam, n, x, y, k, cfg.eps);
    if (abs(red.value) > k) throw Error(ErrorKind::InvalidParameter, "|F_n(x, y)| exceeds k");
    SolutionTrace st{x, y, k, red, siegel_terms(fam, n, red.dec, cfg), {}, std::nullopt};
    st.ledger = inequality_ledger(fam, n, x, y, k, st.reduction, st.trace, cfg);
    if (st.trace.order && st.trace.order->pair == TermCase::T2T3) {
        st.lambda = lambda_machinery(fam, n, st.reduction, st.trace, k, cfg);
    }
    return st;
}

}  // namespace thuefam
