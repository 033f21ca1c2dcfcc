#include "thuefam/reduction.hpp"

#include <algorithm>

#include "thuefam/errors.hpp"

namespace thuefam {

namespace {

// sigma_real(gamma)^6 = m^2 eps^(2t) with 2t = 2j + 1 exactly
bool exact_half_tie(const FieldElement& unit, const FieldElement& gamma, const mpq_class& m, const mpz_class& j) {
    const long e = 6 * j.get_si() + 3;
    return gamma.pow(6) * unit.pow(-e) == FieldElement(gamma.field(), m * m);
}

long choose_ell(const FieldElement& unit, const FieldElement& gamma, const mpq_class& m, double eps) {
    for (long bits = std::max<long>(bits_for(eps) + 16, 64); bits <= 16384; bits *= 2) {
        const Interval g = abs(embed_relative(gamma, bits).real);
        const Interval r = log(embed_relative(unit, bits).real);
        const Prec p = g.prec();
        const Interval t = (log(g) - log(Interval(m, p)) / 3L) / r;
        // ell = ceil(t - 1/2): round half down
        const Interval u = t - Interval(mpq_class(1, 2), p);
        const mpz_class f = u.floor_lo();
        if (u.ceil_hi() - f == 1 && mpfr_integer_p(u.lo()) == 0) return f.get_si() + 1;
        if (auto j = u.unique_integer(); j && exact_half_tie(unit, gamma, m, *j)) return j->get_si();
    }
    throw Error(ErrorKind::PrecisionExhausted, "cannot round the balancing exponent");
}

}  // namespace

Decomposition unit_reduce(const FieldElement& unit, const FieldElement& gamma, double eps) {
    if (gamma.is_zero()) throw Error(ErrorKind::ZeroElement, "unit_reduce of zero");
    Decomposition d{0, gamma, abs(norm(gamma)), Interval()};
    d.ell = choose_ell(unit, gamma, d.norm_abs, eps);
    d.xi = gamma * unit.pow(-d.ell);
    const Embedding e = embed_relative(d.xi, bits_for(eps) + 16);
    const Prec p = e.real.prec();
    const Interval third = log(Interval(d.norm_abs, p)) / 3L;
    const Interval br = abs(log(abs(e.real)) - third);
    const Interval bc = abs(log(abs(e.complex)) - third);
    d.balance = max(br, bc);
    return d;
}

Decomposition unit_reduce(const FormFamily& fam, const FieldElement& gamma, double eps) {
    return unit_reduce(fam.epsilon(), gamma, eps);
}

SolutionReduction decompose_solution(const FormFamily& fam, long n, const mpz_class& x, const mpz_class& y,
                                     std::optional<mpz_class> k, double eps) {
    if (x == 0 || y == 0) throw Error(ErrorKind::TrivialXY, "xy = 0");
    if (fam.is_degenerate(n)) throw Error(ErrorKind::DegenerateN, "eps^n alpha is rational");
    const mpz_class value = fam.form_at(n)(x, y);
    if (value == 0) throw Error(ErrorKind::ZeroValue, "F_n(x, y) = 0");
    const FieldElement gamma = FieldElement(fam.field(), mpq_class(x)) - mpq_class(y) * fam.beta(n);
    SolutionReduction s{gamma, value, unit_reduce(fam, gamma, eps), std::nullopt, false};
    const mpz_class kk = k ? *k : mpz_class(abs(value));

    const long rel = bits_for(eps) + 16;
    const Embedding e = embed_relative(s.dec.xi, rel);
    const Prec p = e.real.prec();
    // a tie puts one embedding exactly on the boundary
    const Interval half_r = log(embed_relative(fam.epsilon(), rel).real) / 2L + Interval::from_double(1e-20, p);
    const Interval cube = exp(log(Interval(s.dec.norm_abs, p)) / 3L);
    const Interval lo = exp(-half_r) * cube;
    const Interval hi = exp(half_r) * cube;
    const Interval mr = abs(e.real);
    const Interval mc = abs(e.complex);
    s.sandwich_holds = lo.certainly_le(mr) && mr.certainly_le(hi) && lo.certainly_le(mc) && mc.certainly_le(hi);
    if (kk >= 2) {
        const Interval one(1L, p);
        const Interval big = max(max(mr, mc), max(one / mr, one / mc));
        s.kappa9 = log(big) / log(Interval(kk, p));
    }
    return s;
}

}  // namespace thuefam
