#include "thuefam/cubicfield.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "thuefam/errors.hpp"
#include "thuefam/intcubic.hpp"

namespace thuefam {

namespace {

constexpr long kMaxBits = 1L << 14;

long bitlen(const mpz_class& z) { return z == 0 ? 0 : static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2)); }

// Upper bound on log2 |q|, at least 0.
long log2_bound(const mpq_class& q) {
    if (q == 0) return 0;
    return std::max(0L, bitlen(q.get_num()) - bitlen(q.get_den()) + 1);
}

mpq_class to_mpq(mpfr_srcptr x) {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), x);
    return q;
}

}  // namespace

mpz_class cubic_discriminant(const Cubic& f) {
    const mpz_class& b = f[1];
    const mpz_class& c = f[2];
    const mpz_class& d = f[3];
    return b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
}

struct CubicField::Impl {
    Cubic poly;
    mpz_class disc;
    mpz_class bound;  // every root has modulus < bound
    long bound_bits = 0;

    std::mutex mu;
    mpz_class m;  // real root in (m / 2^shift, (m + 1) / 2^shift)
    long shift = 0;

    int sign_at(const mpz_class& num, long s) const {
        mpz_class t = 1;
        mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), s);
        mpz_class v = num + poly[1] * t;
        v *= num;
        v += poly[2] * t * t;
        v *= num;
        v += poly[3] * t * t * t;
        return sgn(v);
    }

    // Refine the dyadic isolation until shift >= bits; returns a snapshot.
    std::pair<mpz_class, long> refine(long bits) {
        std::lock_guard<std::mutex> lock(mu);
        while (shift < bits) {
            mpz_class mid = 2 * m + 1;
            const int s = sign_at(mid, shift + 1);
            m *= 2;
            if (s < 0) m += 1;
            ++shift;
        }
        return {m, shift};
    }
};

CubicField::CubicField(const Cubic& min_poly) : impl_(std::make_shared<Impl>()) {
    if (min_poly[0] != 1) throw Error(ErrorKind::NonMonic, "leading coefficient must be 1");
    Impl& d = *impl_;
    d.poly = min_poly;
    if (!integer_roots(IntCubic{1, min_poly[1], min_poly[2], min_poly[3]}).empty()) {
        throw Error(ErrorKind::ReduciblePolynomial, "polynomial has a rational root");
    }
    d.disc = cubic_discriminant(min_poly);
    if (d.disc > 0) throw Error(ErrorKind::TotallyReal, "discriminant is positive");
    mpz_class b = 0;
    for (int i = 1; i < 4; ++i) b = std::max(b, mpz_class(abs(min_poly[i])));
    d.bound = b + 1;
    d.bound_bits = bitlen(d.bound) + 1;

    // Integer isolation: f(-B) < 0 < f(B).
    mpz_class lo = -d.bound;
    mpz_class hi = d.bound;
    while (hi - lo > 1) {
        mpz_class mid = lo + hi;
        mpz_fdiv_q_2exp(mid.get_mpz_t(), mid.get_mpz_t(), 1);
        if (d.sign_at(mid, 0) < 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    d.m = lo;
    d.shift = 0;
}

CubicField make_field(const Cubic& coeffs) { return CubicField(coeffs); }

const Cubic& CubicField::min_poly() const { return impl_->poly; }
const mpz_class& CubicField::disc() const { return impl_->disc; }
long CubicField::root_bound_bits() const { return impl_->bound_bits; }

bool CubicField::operator==(const CubicField& other) const {
    return impl_ == other.impl_ || impl_->poly == other.impl_->poly;
}

std::pair<mpq_class, mpq_class> CubicField::real_root_isolation(long bits) const {
    auto [m, s] = impl_->refine(std::max(0L, bits));
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), s);
    mpq_class lo(m, den);
    mpq_class hi(m + 1, den);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

Interval CubicField::real_root(long bits) const {
    if (bits > kMaxBits) throw Error(ErrorKind::PrecisionExhausted, "root refinement beyond cap");
    auto [m, s] = impl_->refine(std::max(0L, bits) + 2);
    const Prec p = std::max<Prec>(s + impl_->bound_bits + 8, 64);
    return hull(Interval::dyadic(m, s, p), Interval::dyadic(mpz_class(m + 1), s, p));
}

ComplexBox CubicField::complex_root(long bits) const {
    const Interval r = real_root(bits + 4);
    const Cubic& f = impl_->poly;
    const Prec prec = r.prec();
    const Interval p = r + Interval(f[1], prec);
    const Interval q = Interval(f[2], prec) + r * p;
    const Interval re = p / -2L;
    const Interval rad = q - sqr(p) / 4L;
    return ComplexBox(re, sqrt(rad));
}

std::array<mpq_class, 4> CubicField::complex_root_isolation(long bits) const {
    const ComplexBox z = complex_root(bits);
    return {to_mpq(z.re.lo()), to_mpq(z.re.hi()), to_mpq(z.im.lo()), to_mpq(z.im.hi())};
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(CubicField field, mpq_class c0, mpq_class c1, mpq_class c2)
    : field_(std::move(field)), c_{std::move(c0), std::move(c1), std::move(c2)} {}

FieldElement::FieldElement(CubicField field, const std::array<mpq_class, 3>& coords)
    : field_(std::move(field)), c_(coords) {}

FieldElement FieldElement::generator(const CubicField& field) { return FieldElement(field, 0, 1, 0); }
FieldElement FieldElement::one(const CubicField& field) { return FieldElement(field, 1, 0, 0); }

bool FieldElement::is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0; }

void FieldElement::check_same(const FieldElement& o) const {
    if (field_ != o.field_) throw Error(ErrorKind::FieldMismatch, "elements belong to different fields");
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    check_same(o);
    for (int i = 0; i < 3; ++i) c_[i] += o.c_[i];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    check_same(o);
    for (int i = 0; i < 3; ++i) c_[i] -= o.c_[i];
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    check_same(o);
    const Cubic& f = field_.min_poly();
    std::array<mpq_class, 5> d;
    for (int i = 0; i < 3; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < 3; ++j) d[i + j] += c_[i] * o.c_[j];
    }
    // alpha^3 = -(f1 alpha^2 + f2 alpha + f3)
    for (int deg = 4; deg >= 3; --deg) {
        const mpq_class t = d[deg];
        if (t == 0) continue;
        d[deg] = 0;
        d[deg - 1] -= t * f[1];
        d[deg - 2] -= t * f[2];
        d[deg - 3] -= t * f[3];
    }
    c_ = {d[0], d[1], d[2]};
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
    check_same(o);
    return *this *= o.inverse();
}

FieldElement operator-(const FieldElement& a) { return FieldElement(a.field_, -a.c_[0], -a.c_[1], -a.c_[2]); }

FieldElement operator*(const mpq_class& s, const FieldElement& a) {
    return FieldElement(a.field_, s * a.c_[0], s * a.c_[1], s * a.c_[2]);
}

bool FieldElement::operator==(const FieldElement& o) const { return field_ == o.field_ && c_ == o.c_; }

namespace {

using Mat3 = std::array<std::array<mpq_class, 3>, 3>;

// Column j holds the coordinates of x * alpha^j.
Mat3 mult_matrix(const FieldElement& x) {
    Mat3 m;
    FieldElement col = x;
    const FieldElement a = FieldElement::generator(x.field());
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) m[i][j] = col[i];
        if (j < 2) col *= a;
    }
    return m;
}

mpq_class det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    const Mat3 m = mult_matrix(*this);
    const mpq_class det = det3(m);
    // x^-1 = M^-1 e0: first column of the adjugate over det.
    std::array<mpq_class, 3> v;
    v[0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    v[1] = -(m[1][0] * m[2][2] - m[1][2] * m[2][0]) / det;
    v[2] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
    return FieldElement(field_, v);
}

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement result = one(field_);
    FieldElement base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

std::array<mpq_class, 4> FieldElement::charpoly() const {
    const Mat3 m = mult_matrix(*this);
    const mpq_class tr = m[0][0] + m[1][1] + m[2][2];
    const mpq_class e2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] +
                         m[1][1] * m[2][2] - m[1][2] * m[2][1];
    return {1, -tr, e2, -det3(m)};
}

std::vector<mpz_class> FieldElement::min_poly() const {
    if (is_rational()) return {c_[0].get_den(), -c_[0].get_num()};
    const auto cp = charpoly();
    mpz_class l = 1;
    for (const auto& q : cp) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> out;
    mpz_class g = 0;
    for (const auto& q : cp) {
        mpz_class v = q.get_num() * (l / q.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        out.push_back(v);
    }
    for (auto& v : out) v /= g;
    return out;
}

bool FieldElement::is_integral() const {
    if (is_rational()) return c_[0].get_den() == 1;
    for (const auto& q : charpoly()) {
        if (q.get_den() != 1) return false;
    }
    return true;
}

mpq_class norm(const FieldElement& x) { return -x.charpoly()[3]; }
mpq_class trace(const FieldElement& x) { return -x.charpoly()[1]; }

// ---------------------------------------------------------------------------

Embedding embed_bits(const FieldElement& x, long bits) {
    const CubicField& k = x.field();
    const Interval r = k.real_root(bits);
    const ComplexBox z = k.complex_root(bits);
    const Prec p = std::max(r.prec(), z.prec());
    const Interval c0(x[0], p);
    const Interval c1(x[1], p);
    const Interval c2(x[2], p);
    Interval real = (c2 * r + c1) * r + c0;
    ComplexBox t = z * c2;
    t.re += c1;
    ComplexBox cx = t * z;
    cx.re += c0;
    return {std::move(real), std::move(cx)};
}

namespace {

long start_bits(const FieldElement& x, long target) {
    long cb = 0;
    for (int i = 0; i < 3; ++i) cb = std::max(cb, log2_bound(x[i]));
    return target + cb + 2 * x.field().root_bound_bits() + 16;
}

}  // namespace

Embedding embed(const FieldElement& x, double eps) {
    const long target = bits_for(eps);
    if (x.is_rational()) {
        const Prec p = std::max<Prec>(target + log2_bound(x[0]) + 8, 64);
        Interval v(x[0], p);
        return {v, ComplexBox(v, Interval(0L, p))};
    }
    for (long bits = start_bits(x, target); bits <= kMaxBits; bits += bits / 2 + 32) {
        Embedding e = embed_bits(x, bits);
        if (e.real.width() <= eps && e.complex.width() <= eps) return e;
    }
    throw Error(ErrorKind::PrecisionExhausted, "embedding did not reach the requested width");
}

Embedding embed_relative(const FieldElement& x, long rel_bits) {
    if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "relative enclosure of zero");
    const double rel = std::ldexp(1.0, static_cast<int>(-rel_bits));
    for (long bits = start_bits(x, rel_bits); bits <= kMaxBits; bits = bits * 2) {
        Embedding e = embed_bits(x, bits);
        const double rm = e.real.mig();
        const double cm = abs(e.complex).mig();
        if (rm > 0 && cm > 0 && e.real.width() <= rel * rm && e.complex.width() <= rel * cm) return e;
    }
    throw Error(ErrorKind::PrecisionExhausted, "relative embedding did not converge");
}

Interval house(const FieldElement& x, double eps) {
    if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "house of zero");
    const Embedding e = embed(x, eps / 4);
    return max(abs(e.real), abs(e.complex));
}

}  // namespace thuefam
