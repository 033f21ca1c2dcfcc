#include "thuefam/solver.hpp"

#include <algorithm>
#include <cmath>

#include "thuefam/errors.hpp"
#include "thuefam/heights.hpp"
#include "thuefam/intcubic.hpp"
#include "thuefam/interval.hpp"

namespace thuefam {

namespace {

// Stripes whose windows hold more integers than this go to the oracle.
constexpr long kMaxCandidates = 1000000;

std::vector<long> n_values(const FormFamily& fam, const SearchSpec& spec) {
    std::vector<long> out;
    for (long n = spec.n_lo; n <= spec.n_hi; ++n) {
        if (spec.exclude_degenerate && fam.is_degenerate(n)) continue;
        out.push_back(n);
    }
    return out;
}

std::vector<long> y_values(const SearchSpec& spec) {
    std::vector<long> out;
    for (long y = -spec.y_max; y <= spec.y_max; ++y) {
        if (y == 0 && spec.exclude_trivial) continue;
        out.push_back(y);
    }
    return out;
}

SolutionRecord make_record(long n, const mpz_class& x, long y, const mpz_class& v) {
    SolutionRecord r;
    r.n = n;
    r.x = x;
    r.y = y;
    r.value = v;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), r.y.get_mpz_t());
    r.primitive = g == 1;
    return r;
}

void oracle_stripe(const BinaryCubicForm& F, long n, long y, const SearchSpec& spec,
                   std::vector<SolutionRecord>& out) {
    const mpz_class Y = y;
    const IntCubic p{F.a[0], F.a[1] * Y, F.a[2] * Y * Y, F.a[3] * Y * Y * Y};
    if (p.c3 == 0) throw Error(ErrorKind::InvalidParameter, "form with vanishing leading coefficient");
    for (const mpz_class& x : small_value_points(p, spec.k)) {
        if (spec.exclude_trivial && x == 0) continue;
        const mpz_class v = p(x);
        if (v != 0) out.push_back(make_record(n, x, y, v));
    }
}

// Per-n data of the pruned path. With u = x - beta y, d = (beta - Re beta') y
// and q = |Im beta'| |y| one has |F| = |u| ((u + d)^2 + q^2), so a solution
// satisfies |u| <= k / q^2 and either
//   |u| <= min(|d| / 2, k / (d^2 / 4 + q^2))      (near x = beta y)  or
//   (u + d)^2 <= 2k / |d| - q^2                   (near x = Re(beta') y).
// The radii scale as powers of |y|; their coefficients are bounded once in
// double with an outward factor, the centres are rounded outward in MPFR.
class Lines {
public:
    Lines(const FormFamily& fam, long n, const mpz_class& k, long y_max, long guard_bits) {
        mpfr_inits2(64, lo_, hi_, nullptr);
        const FieldElement b = fam.beta(n);
        if (b.is_rational()) return;
        const Embedding coarse = embed_bits(b, 64);
        const double mag = std::max({coarse.real.mag(), coarse.complex.re.mag(), coarse.complex.im.mag(), 1.0});
        const long bits =
            guard_bits + static_cast<long>(std::ceil(std::log2(mag * static_cast<double>(y_max) + 2))) + 8;
        const Embedding e = embed_bits(b, bits);
        beta_ = e.real;
        re2_ = e.complex.re;
        mpfr_set_prec(lo_, bits + 64);
        mpfr_set_prec(hi_, bits + 64);
        const Interval im = abs(e.complex.im);
        if (im.contains_zero()) return;
        const Interval d = abs(beta_ - re2_);
        const Interval K(k, bits);
        const double up = 1 + 1e-12;
        const double q2 = sqr(im).lower();
        k_ = K.upper() * up;
        r0_ = k_ / q2 * up;
        d_hi_ = d.upper() * up;
        d_lo_ = d.contains_zero() ? 0.0 : d.lower() / up;
        if (d_lo_ > 0) {
            r1_ = k_ / (d_lo_ * d_lo_ / 4 + q2) * up;
            t1_ = 2 * k_ / d_lo_ * up;
        }
        q2_ = q2 / up;
        usable_ = std::isfinite(r0_) && std::isfinite(r1_) && std::isfinite(t1_) && std::isfinite(d_hi_);
    }
    ~Lines() { mpfr_clears(lo_, hi_, nullptr); }
    Lines(const Lines&) = delete;
    Lines& operator=(const Lines&) = delete;

    bool usable() const { return usable_; }

    // Candidate windows for y != 0, as inclusive integer ranges.
    void windows(long y, std::vector<std::pair<mpz_class, mpz_class>>& out) {
        out.clear();
        const double ay = std::fabs(static_cast<double>(y));
        const double up = 1 + 1e-12;
        const double r0 = r0_ / (ay * ay) * up;
        mpz_class a0, b0;
        centre(beta_, y, r0, a0, b0);
        if (a0 > b0) return;
        auto add = [&](const Interval& c, double r) {
            mpz_class a, b;
            centre(c, y, r, a, b);
            a = std::max(a, a0);
            b = std::min(b, b0);
            if (a <= b) out.emplace_back(std::move(a), std::move(b));
        };
        if (d_lo_ == 0) {
            out.emplace_back(a0, b0);
            return;
        }
        add(beta_, std::min(d_hi_ * ay / 2, r1_ / (ay * ay)) * up);
        const double t = (t1_ / ay - q2_ * ay * ay) * up;
        if (t >= 0) add(re2_, std::sqrt(t) * up);
    }

private:
    // integers in [c y - r, c y + r]
    void centre(const Interval& c, long y, double r, mpz_class& a, mpz_class& b) {
        if (y > 0) {
            mpfr_mul_si(lo_, c.lo(), y, MPFR_RNDD);
            mpfr_mul_si(hi_, c.hi(), y, MPFR_RNDU);
        } else {
            mpfr_mul_si(lo_, c.hi(), y, MPFR_RNDD);
            mpfr_mul_si(hi_, c.lo(), y, MPFR_RNDU);
        }
        mpfr_sub_d(lo_, lo_, r, MPFR_RNDD);
        mpfr_add_d(hi_, hi_, r, MPFR_RNDU);
        mpfr_get_z(a.get_mpz_t(), lo_, MPFR_RNDU);
        mpfr_get_z(b.get_mpz_t(), hi_, MPFR_RNDD);
    }

    bool usable_ = false;
    Interval beta_;
    Interval re2_;
    double k_ = 0, r0_ = 0, r1_ = 0, t1_ = 0, d_hi_ = 0, d_lo_ = 0, q2_ = 0;
    mpfr_t lo_, hi_;
};

bool pruned_stripe(const BinaryCubicForm& F, Lines& L, long n, long y, const SearchSpec& spec, SolveStats& st,
                   std::vector<std::pair<mpz_class, mpz_class>>& windows, std::vector<SolutionRecord>& out) {
    L.windows(y, windows);
    mpz_class total = 0;
    for (const auto& [a, b] : windows) total += b - a + 1;
    if (total > kMaxCandidates) return false;
    std::sort(windows.begin(), windows.end());
    const mpz_class Y = y;
    mpz_class last = windows.empty() ? mpz_class(0) : windows.front().first - 1;
    for (const auto& [a, b] : windows) {
        for (mpz_class x = std::max(a, mpz_class(last + 1)); x <= b; ++x) {
            ++st.evaluations;
            if (spec.exclude_trivial && x == 0) continue;
            const mpz_class v = F(x, Y);
            if (v != 0 && abs(v) <= spec.k) out.push_back(make_record(n, x, y, v));
        }
        last = std::max(last, b);
    }
    return true;
}

}  // namespace

void SearchSpec::validate() const {
    if (k < 0) throw Error(ErrorKind::InvalidParameter, "k must be nonnegative");
    if (n_lo > n_hi) throw Error(ErrorKind::InvalidParameter, "empty n range");
    if (y_max < 1) throw Error(ErrorKind::InvalidParameter, "y_max must be positive");
}

bool SolutionRecord::operator<(const SolutionRecord& o) const {
    if (n != o.n) return n < o.n;
    if (y != o.y) return y < o.y;
    return x < o.x;
}

std::vector<SolutionRecord> brute_force_oracle(const FormFamily& fam, const SearchSpec& spec) {
    spec.validate();
    std::vector<SolutionRecord> out;
    if (spec.k == 0) return out;
    const std::vector<long> ys = y_values(spec);
    for (long n : n_values(fam, spec)) {
        const BinaryCubicForm F = fam.form_at(n);
        for (long y : ys) oracle_stripe(F, n, y, spec, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SolutionRecord> exhaustive_box_scan(const FormFamily& fam, const SearchSpec& spec, long x_max) {
    spec.validate();
    std::vector<SolutionRecord> out;
    if (spec.k == 0) return out;
    for (long n : n_values(fam, spec)) {
        const BinaryCubicForm F = fam.form_at(n);
        for (long y : y_values(spec)) {
            for (long x = -x_max; x <= x_max; ++x) {
                if (spec.exclude_trivial && x == 0) continue;
                const mpz_class v = F(x, y);
                if (v != 0 && abs(v) <= spec.k) out.push_back(make_record(n, x, y, v));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SolutionRecord> solve_box(const FormFamily& fam, const SearchSpec& spec, long guard_bits,
                                      SolveStats* stats) {
    spec.validate();
    SolveStats st;
    std::vector<SolutionRecord> out;
    if (spec.k == 0) {
        if (stats) *stats = st;
        return out;
    }
    const std::vector<long> ys = y_values(spec);
    std::vector<std::pair<mpz_class, mpz_class>> windows;
    for (long n : n_values(fam, spec)) {
        const BinaryCubicForm F = fam.form_at(n);
        Lines L(fam, n, spec.k, spec.y_max, guard_bits);
        for (long y : ys) {
            ++st.stripes;
            if (y != 0 && L.usable() && pruned_stripe(F, L, n, y, spec, st, windows, out)) {
                ++st.pruned;
                continue;
            }
            ++st.fallback;
            oracle_stripe(F, n, y, spec, out);
        }
    }
    std::sort(out.begin(), out.end());
    if (stats) *stats = st;
    return out;
}

bool verify_record(const FormFamily& fam, const mpz_class& k, const SolutionRecord& r) {
    const FieldElement g = FieldElement(fam.field(), mpq_class(r.x)) - mpq_class(r.y) * fam.beta(r.n);
    const mpq_class v = norm(g);
    return v != 0 && abs(v) <= k && v == r.value;
}

void attach_decompositions(const FormFamily& fam, std::vector<SolutionRecord>& records, double eps) {
    for (SolutionRecord& r : records) {
        r.decomposition = decompose_solution(fam, r.n, r.x, r.y, std::nullopt, eps).dec;
    }
}

Theorem1Sweep theorem1_sweep(const FormFamily& fam, const std::vector<mpz_class>& k_list, const SearchSpec& tmpl) {
    if (!std::is_sorted(k_list.begin(), k_list.end())) throw Error(ErrorKind::InvalidParameter, "k list not ascending");
    Theorem1Sweep sw;
    const double logeps = log(embed_bits(fam.epsilon(), 96).real).mid();
    sw.nondecreasing = true;
    double prev = 0.0;
    for (const mpz_class& k : k_list) {
        SearchSpec s = tmpl;
        s.k = k;
        // one run at 2 y_max serves both boxes
        s.y_max = 2 * tmpl.y_max;
        const std::vector<SolutionRecord> sols = solve_box(fam, s);
        SweepRow row;
        row.k = k;
        for (const SolutionRecord& r : sols) {
            if (abs(r.y) > tmpl.y_max) {
                ++row.added_on_doubling;
                continue;
            }
            ++row.count;
            double q = std::labs(r.n) * logeps;
            for (const mpz_class* c : {&r.x, &r.y}) {
                if (*c != 0) {
                    long ex = 0;
                    const double m = mpz_get_d_2exp(&ex, mpz_class(abs(*c)).get_mpz_t());
                    q = std::max(q, std::log(m) + ex * std::log(2.0));
                }
            }
            if (!row.argmax || q > row.log_max) {
                row.log_max = q;
                row.argmax = r;
            }
        }
        row.box_stable = row.added_on_doubling == 0;
        if (k >= 2) {
            row.exponent = row.log_max / std::log(k.get_d());
            if (row.log_max > 0) {
                const double k4 = std::log(k.get_d()) / row.log_max;
                sw.kappa4 = sw.kappa4 ? std::min(*sw.kappa4, k4) : k4;
            }
        }
        if (row.log_max < prev) sw.nondecreasing = false;
        prev = std::max(prev, row.log_max);
        sw.rows.push_back(std::move(row));
    }
    return sw;
}

}  // namespace thuefam
