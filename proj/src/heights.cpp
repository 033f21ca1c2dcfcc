#include "thuefam/heights.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <sstream>

#include "thuefam/errors.hpp"

namespace thuefam {

namespace {

using QPoly = std::vector<mpq_class>;  // leading coefficient first

void trim(QPoly& p) {
    size_t i = 0;
    while (i + 1 < p.size() && p[i] == 0) ++i;
    p.erase(p.begin(), p.begin() + static_cast<long>(i));
    if (p.empty()) p.push_back(0);
}

bool is_zero(const QPoly& p) { return p.size() == 1 && p[0] == 0; }
size_t degree(const QPoly& p) { return p.size() - 1; }

QPoly make_monic(QPoly p) {
    const mpq_class lc = p[0];
    for (auto& c : p) c /= lc;
    return p;
}

QPoly derivative(const QPoly& p) {
    const size_t n = degree(p);
    if (n == 0) return {0};
    QPoly d(n);
    for (size_t i = 0; i < n; ++i) d[i] = p[i] * static_cast<long>(n - i);
    return d;
}

QPoly sub(const QPoly& a, const QPoly& b) {
    const size_t n = std::max(a.size(), b.size());
    QPoly r(n, 0);
    for (size_t i = 0; i < a.size(); ++i) r[n - a.size() + i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[n - b.size() + i] -= b[i];
    trim(r);
    return r;
}

// Quotient and remainder of a / b, b nonzero.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
    trim(a);
    if (degree(a) < degree(b)) return {{0}, a};
    const size_t qn = degree(a) - degree(b) + 1;
    QPoly q(qn, 0);
    for (size_t i = 0; i < qn; ++i) {
        const mpq_class c = a[i] / b[0];
        q[i] = c;
        if (c == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
    }
    QPoly r(a.begin() + static_cast<long>(qn), a.end());
    if (r.empty()) r.push_back(0);
    trim(r);
    return {q, r};
}

QPoly gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!is_zero(b)) {
        QPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

QPoly exact_div(const QPoly& a, const QPoly& b) { return divmod(a, b).first; }

Interval point_mid(const Interval& x) {
    mpfr_t m;
    mpfr_init2(m, x.prec() + 2);
    mpfr_add(m, x.lo(), x.hi(), MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    Interval r = Interval::from_bounds(m, m);
    mpfr_clear(m);
    return r;
}

ComplexBox point_mid(const ComplexBox& z) { return ComplexBox(point_mid(z.re), point_mid(z.im)); }

ComplexBox horner(const std::vector<Interval>& c, const ComplexBox& z) {
    ComplexBox acc(c[0], Interval(0L, z.prec()));
    for (size_t i = 1; i < c.size(); ++i) {
        acc = acc * z;
        acc.re += c[i];
    }
    return acc;
}

// Approximate roots of a monic squarefree polynomial in long double.
std::vector<std::complex<long double>> aberth_ld(const QPoly& p) {
    using C = std::complex<long double>;
    const size_t n = degree(p);
    std::vector<long double> c(p.size());
    for (size_t i = 0; i < p.size(); ++i) c[i] = static_cast<long double>(p[i].get_d());
    long double bound = 0;
    for (size_t i = 1; i < c.size(); ++i) bound = std::max(bound, std::pow(std::fabs(c[i]), 1.0L / i));
    bound = std::max(2 * bound, 1.0L);
    std::vector<C> z(n);
    for (size_t i = 0; i < n; ++i) z[i] = std::polar(bound, 2 * M_PIl * (i + 0.25L) / n);
    auto eval = [&](C x, C& d) {
        C v = c[0];
        d = 0;
        for (size_t i = 1; i < c.size(); ++i) {
            d = d * x + v;
            v = v * x + c[i];
        }
        return v;
    };
    for (int it = 0; it < 2000; ++it) {
        long double change = 0;
        for (size_t i = 0; i < n; ++i) {
            C d;
            C v = eval(z[i], d);
            if (v == C(0)) continue;
            C w = v / d;
            C s = 0;
            for (size_t j = 0; j < n; ++j) {
                if (j != i) s += 1.0L / (z[i] - z[j]);
            }
            C step = w / (1.0L - w * s);
            z[i] -= step;
            change = std::max(change, std::abs(step) / std::max(1.0L, std::abs(z[i])));
        }
        if (change < 1e-17L) break;
    }
    return z;
}

struct RootCluster {
    Interval modulus;  // hull of moduli of every root in the cluster
    int count = 0;
};

// Certified clusters of the roots of a monic squarefree polynomial.
std::vector<RootCluster> certified_roots(const QPoly& p, Prec prec) {
    const size_t n = degree(p);
    std::vector<Interval> c;
    for (const auto& q : p) c.emplace_back(q, prec);
    std::vector<ComplexBox> z;
    for (const auto& r : aberth_ld(p)) {
        z.emplace_back(Interval::from_double(static_cast<double>(r.real()), prec),
                       Interval::from_double(static_cast<double>(r.imag()), prec));
    }
    std::vector<Interval> dc;
    for (size_t i = 0; i + 1 < c.size(); ++i) dc.push_back(c[i] * static_cast<long>(n - i));
    // Aberth refinement at working precision.
    const int iters = 8 + static_cast<int>(std::log2(static_cast<double>(prec)));
    for (int it = 0; it < iters; ++it) {
        for (size_t i = 0; i < n; ++i) {
            ComplexBox v = horner(c, z[i]);
            ComplexBox d = horner(dc, z[i]);
            if (d.contains_zero() || v.contains_zero()) continue;
            ComplexBox w = v / d;
            ComplexBox s(prec);
            for (size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                ComplexBox diff = z[i] - z[j];
                if (diff.contains_zero()) continue;
                s = s + ComplexBox(Interval(1L, prec), Interval(0L, prec)) / diff;
            }
            ComplexBox den = ComplexBox(Interval(1L, prec), Interval(0L, prec)) - w * s;
            if (den.contains_zero()) continue;
            z[i] = point_mid(z[i] - w / den);
        }
    }
    // Inclusion disks of radius n |W_i|.
    std::vector<Interval> rad(n, Interval(prec));
    for (size_t i = 0; i < n; ++i) {
        ComplexBox prod(Interval(1L, prec), Interval(0L, prec));
        for (size_t j = 0; j < n; ++j) {
            if (j != i) prod = prod * (z[i] - z[j]);
        }
        if (prod.contains_zero()) throw Error(ErrorKind::PrecisionExhausted, "root approximations collide");
        Interval r = abs(horner(c, z[i]) / prod) * static_cast<long>(n);
        rad[i] = Interval::from_bounds(r.hi(), r.hi());
    }
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            // Disks not certainly apart are merged; merging keeps the root count valid.
            if (!(rad[i] + rad[j]).certainly_less(abs(z[i] - z[j]))) parent[find(i)] = find(j);
        }
    }
    std::vector<RootCluster> out;
    std::vector<long> slot(n, -1);
    for (size_t i = 0; i < n; ++i) {
        const Interval m = abs(z[i]);
        const Interval lo = m - rad[i];
        const Interval hi = m + rad[i];
        Interval range = hull(lo, hi);
        const size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(out.size());
            out.push_back({range, 0});
        } else {
            out[slot[r]].modulus = hull(out[slot[r]].modulus, range);
        }
        ++out[slot[r]].count;
    }
    return out;
}

}  // namespace

std::vector<std::pair<std::vector<mpq_class>, int>> squarefree_decomposition(const std::vector<mpz_class>& poly) {
    QPoly f;
    for (const auto& c : poly) f.emplace_back(c);
    trim(f);
    if (is_zero(f)) throw Error(ErrorKind::ZeroPolynomial, "zero polynomial");
    f = make_monic(f);
    std::vector<std::pair<QPoly, int>> out;
    if (degree(f) == 0) return out;
    // Yun's algorithm
    const QPoly fp = derivative(f);
    QPoly a = gcd(f, fp);
    QPoly b = exact_div(f, a);
    QPoly c = exact_div(fp, a);
    QPoly d = sub(c, derivative(b));
    for (int i = 1; degree(b) > 0; ++i) {
        QPoly g = gcd(b, d);
        b = exact_div(b, g);
        c = exact_div(d, g);
        d = sub(c, derivative(b));
        if (degree(g) > 0) out.emplace_back(make_monic(g), i);
    }
    return out;
}

Interval mahler_measure(const std::vector<mpz_class>& poly, double eps) {
    size_t lead = 0;
    while (lead < poly.size() && poly[lead] == 0) ++lead;
    if (lead == poly.size()) throw Error(ErrorKind::ZeroPolynomial, "zero polynomial");
    const mpz_class lc = abs(poly[lead]);
    const auto factors = squarefree_decomposition(poly);
    for (Prec prec = std::max<Prec>(bits_for(eps) + 32, 96); prec <= (1 << 14); prec *= 2) {
        Interval m(lc, prec);
        Interval one(1L, prec);
        bool ok = true;
        for (const auto& [g, mult] : factors) {
            if (degree(g) == 1) {
                m *= pow(max(one, abs(Interval(-g[1], prec))), mult);
                continue;
            }
            std::vector<RootCluster> cl;
            try {
                cl = certified_roots(g, prec);
            } catch (const Error&) {
                ok = false;
                break;
            }
            for (const auto& r : cl) m *= pow(max(one, r.modulus), static_cast<long>(r.count) * mult);
        }
        if (ok && m.width() <= eps * std::max(1.0, m.mid())) return m;
    }
    throw Error(ErrorKind::PrecisionExhausted, "Mahler measure did not reach the requested width");
}

Interval log_height_from_conjugates(const std::vector<Interval>& moduli) {
    if (moduli.empty()) throw Error(ErrorKind::InvalidParameter, "no conjugates");
    const Prec p = moduli.front().prec();
    Interval s(0L, p);
    const Interval one(1L, p);
    for (const auto& m : moduli) s += log(max(one, m));
    return s / static_cast<long>(moduli.size());
}

HeightReport abs_log_height(const FieldElement& x, double eps) {
    if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "height of zero");
    const Prec p = bits_for(eps) + 32;
    if (x.is_rational()) {
        const mpq_class& q = x[0];
        const mpz_class m = std::max(mpz_class(abs(q.get_num())), mpz_class(q.get_den()));
        Interval mi(m, p);
        return {mi, log(mi), 1};
    }
    const auto mp = x.min_poly();
    const Embedding e = embed_relative(x, bits_for(eps) + 16);
    const Interval one(1L, e.real.prec());
    const Interval lead(mp[0], e.real.prec());
    Interval m = lead * max(one, abs(e.real)) * sqr(max(one, abs(e.complex)));
    Interval h = (log(lead) + log(max(one, abs(e.real))) + log(max(one, abs(e.complex))) * 2L) / 3L;
    return {m, h, 3};
}

namespace {

void require_unit_above_one(const FieldElement& u) {
    if (!u.is_integral()) throw Error(ErrorKind::NotAUnit, "not integral");
    const mpq_class n = norm(u);
    if (n != 1 && n != -1) throw Error(ErrorKind::NotAUnit, "norm is not +-1");
    if (u.is_rational()) throw Error(ErrorKind::NotAUnit, "+-1 is not a unit > 1");
    const Embedding e = embed_relative(u, 16);
    if (mpfr_cmp_ui(e.real.lo(), 1) <= 0) throw Error(ErrorKind::NotAUnit, "real embedding is not > 1");
}

}  // namespace

Interval regulator(const FieldElement& unit, double eps) {
    require_unit_above_one(unit);
    return log(embed(unit, eps / 2).real);
}

Interval regulator(const FormFamily& fam, double eps) { return regulator(fam.epsilon(), eps); }

// ---------------------------------------------------------------------------

namespace {

std::vector<std::pair<mpz_class, int>> factorize(mpz_class n) {
    std::vector<std::pair<mpz_class, int>> out;
    n = abs(n);
    for (mpz_class p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

mpz_class mod(const mpz_class& a, const mpz_class& p) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
}

// Dedekind's criterion for p with p | disc(f): is Z[alpha] p-maximal?
bool p_maximal(const Cubic& f, const mpz_class& p) {
    if (p > 1000000) return false;
    auto ev = [&](const mpz_class& x) -> mpz_class { return ((x + f[1]) * x + f[2]) * x + f[3]; };
    auto dv = [&](const mpz_class& x) -> mpz_class { return (3 * x + 2 * f[1]) * x + f[2]; };
    mpz_class r = -1;
    for (mpz_class x = 0; x < p; ++x) {
        if (mod(ev(x), p) == 0 && mod(dv(x), p) == 0) {
            r = x;
            break;
        }
    }
    if (r < 0) return false;
    const mpz_class u = mod(-f[1] - 2 * r, p);
    // g h as integer polynomial in x, coefficients of x^3..x^0
    std::array<mpz_class, 4> gh;
    if (u != r) {
        // (x - r)^2 (x - u)
        gh = {1, -(2 * r + u), r * r + 2 * r * u, -r * r * u};
    } else {
        gh = {1, -3 * r, 3 * r * r, -r * r * r};
    }
    mpz_class val = 0;
    for (int i = 0; i < 4; ++i) {
        mpz_class coeff = gh[i] - f[i];
        if (coeff % p != 0) return false;
        val = val * r + coeff / p;
    }
    return mod(val, p) != 0;
}

bool stickelberger_ok(const mpz_class& d) {
    const mpz_class r = mod(d, 4);
    return r == 0 || r == 1;
}

}  // namespace

mpz_class field_discriminant_lower_bound(const Cubic& f) {
    const mpz_class disc = cubic_discriminant(f);
    std::vector<std::vector<mpz_class>> choices;
    for (const auto& [p, e] : factorize(disc)) {
        if (e < 2) continue;
        std::vector<mpz_class> opts;
        if (p_maximal(f, p)) {
            opts.push_back(1);
        } else {
            mpz_class s = 1;
            for (int k = 1; 2 * k <= e; ++k) {
                s *= p;
                opts.push_back(s);
            }
        }
        choices.push_back(opts);
    }
    mpz_class best = abs(disc);
    std::vector<size_t> idx(choices.size(), 0);
    for (;;) {
        mpz_class s = 1;
        for (size_t i = 0; i < choices.size(); ++i) s *= choices[i][idx[i]];
        const mpz_class d = disc / (s * s);
        if (stickelberger_ok(d)) best = std::min(best, mpz_class(abs(d)));
        size_t i = 0;
        while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    // Every complex cubic field has |disc| >= 23.
    return std::max(best, mpz_class(23));
}

std::string to_string(Fundamentality f) {
    return f == Fundamentality::ProvedFundamental ? "proved_fundamental" : "unknown";
}

FundamentalityCertificate check_fundamental(const FieldElement& unit) {
    require_unit_above_one(unit);
    FundamentalityCertificate cert;
    const CubicField& k = unit.field();
    cert.poly_disc = k.disc();
    cert.field_disc_lower_bound = field_discriminant_lower_bound(k.min_poly());
    const Prec p = 128;
    const Interval eps = embed_relative(unit, 100).real;
    cert.artin_rhs = sqrt(pow(eps, 3)) * 4L + Interval(24L, p);
    const Interval dk(cert.field_disc_lower_bound, p);
    cert.margin = (dk - cert.artin_rhs).lower();
    if (cert.artin_rhs.certainly_le(dk)) {
        cert.status = Fundamentality::ProvedFundamental;
        cert.method = "artin";
        return cert;
    }
    // eps = eta^m for a unit eta > 1 and a prime m. eta is a Pisot unit, so
    // eta >= 1.3247 (the plastic number), and its minimal polynomial
    // X^3 - t X^2 + s X - N has |t - eta| <= 2 eta^(-1/2), |s - N/eta| <= 2 eta^(1/2).
    const Interval log_eps = log(eps);
    const Interval plastic_log = log(Interval(mpq_class(13247, 10000), p));
    const long m_max = static_cast<long>(std::floor((log_eps / plastic_log).upper()));
    double smallest = std::numeric_limits<double>::infinity();
    bool all_excluded = true;
    for (long m = 2; m <= m_max; ++m) {
        bool prime = true;
        for (long q = 2; q * q <= m; ++q) prime = prime && (m % q != 0);
        if (!prime) continue;
        const Interval eta = exp(log_eps / m);
        const Interval r = sqrt(eta);
        const Interval t_lo = eta - Interval(2L, p) / r;
        const Interval t_hi = eta + Interval(2L, p) / r;
        const Interval inv = Interval(1L, p) / eta;
        // s - N / eta = 2 eta Re(eta'), N = +-1
        const Interval s_lo = -inv - r * 2L;
        const Interval s_hi = inv + r * 2L;
        bool excluded = true;
        for (mpz_class t = t_lo.floor_lo(); t <= t_hi.ceil_hi(); ++t) {
            for (mpz_class s = s_lo.floor_lo(); s <= s_hi.ceil_hi(); ++s) {
                for (long nn : {1L, -1L}) {
                    const Interval v = ((eta - Interval(t, p)) * eta + Interval(s, p)) * eta - Interval(nn, p);
                    if (v.contains_zero()) {
                        excluded = false;
                        std::ostringstream os;
                        os << "m=" << m << " t=" << t.get_str() << " s=" << s.get_str() << " N=" << nn;
                        cert.unresolved.push_back(os.str());
                    } else {
                        smallest = std::min(smallest, v.mig());
                    }
                }
            }
        }
        if (excluded) {
            cert.excluded_exponents.push_back(m);
        } else {
            all_excluded = false;
        }
    }
    if (all_excluded) {
        cert.status = Fundamentality::ProvedFundamental;
        cert.method = "pisot-enumeration";
        cert.margin = std::isinf(smallest) ? 0.0 : smallest;
    }
    return cert;
}

FundamentalityCertificate check_fundamental(const FormFamily& fam) { return check_fundamental(fam.epsilon()); }

}  // namespace thuefam
