#include "thuefam/interval.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "thuefam/errors.hpp"

namespace thuefam {

namespace {

Prec max_prec(const Interval& a, const Interval& b) { return std::max(a.prec(), b.prec()); }

// Scratch MPFR value with RAII.
class Tmp {
public:
    explicit Tmp(Prec prec) { mpfr_init2(v_, prec); }
    ~Tmp() { mpfr_clear(v_); }
    Tmp(const Tmp&) = delete;
    Tmp& operator=(const Tmp&) = delete;
    mpfr_ptr get() { return v_; }
    operator mpfr_ptr() { return v_; }

private:
    mpfr_t v_;
};

// True if some integer j may satisfy lo <= 2pi*(phase + j) <= hi. Never
// false when such a j exists.
bool may_contain_phase(const Interval& x, long num, long den) {
    const Prec p = x.prec() + 16;
    Interval two_pi = Interval::pi(p) * 2;
    Interval shift = two_pi * num / den;
    Interval t = (x.with_prec(p) - shift) / two_pi;
    mpz_class a;
    mpz_class b;
    mpfr_get_z(a.get_mpz_t(), t.lo(), MPFR_RNDU);
    mpfr_get_z(b.get_mpz_t(), t.hi(), MPFR_RNDD);
    return a <= b;
}

}  // namespace

Prec bits_for(double eps) {
    if (!(eps > 0.0)) throw Error(ErrorKind::InvalidParameter, "precision must be positive");
    const double b = std::ceil(-std::log2(eps));
    return static_cast<Prec>(std::max(8.0, b));
}

Interval::Interval(Prec prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(Uninit, Prec prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
}

Interval::Interval(long value, Prec prec) : Interval(Uninit{}, prec) {
    mpfr_set_si(lo_, value, MPFR_RNDD);
    mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const mpz_class& value, Prec prec) : Interval(Uninit{}, prec) {
    mpfr_set_z(lo_, value.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi_, value.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const mpq_class& value, Prec prec) : Interval(Uninit{}, prec) {
    mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const mpq_class& lo, const mpq_class& hi, Prec prec) : Interval(Uninit{}, prec) {
    mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval Interval::from_double(double value, Prec prec) {
    Interval r(Uninit{}, std::max<Prec>(prec, 53));
    mpfr_set_d(r.lo_, value, MPFR_RNDD);
    mpfr_set_d(r.hi_, value, MPFR_RNDU);
    return r;
}

Interval Interval::dyadic(const mpz_class& m, long shift, Prec prec) {
    Interval r(Uninit{}, prec);
    mpfr_set_z(r.lo_, m.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, m.get_mpz_t(), MPFR_RNDU);
    mpfr_div_2si(r.lo_, r.lo_, shift, MPFR_RNDD);
    mpfr_div_2si(r.hi_, r.hi_, shift, MPFR_RNDU);
    return r;
}

Interval Interval::from_bounds(mpfr_srcptr lo, mpfr_srcptr hi) {
    Interval r(Uninit{}, std::max(mpfr_get_prec(lo), mpfr_get_prec(hi)));
    mpfr_set(r.lo_, lo, MPFR_RNDD);
    mpfr_set(r.hi_, hi, MPFR_RNDU);
    return r;
}

Interval Interval::pi(Prec prec) {
    Interval r(Uninit{}, prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

Interval::Interval(const Interval& other) : Interval(Uninit{}, other.prec()) {
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(Uninit{}, MPFR_PREC_MIN) {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
    if (this != &other) {
        mpfr_set_prec(lo_, other.prec());
        mpfr_set_prec(hi_, other.prec());
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

double Interval::mid() const {
    Tmp t(prec() + 1);
    mpfr_add(t, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(t, t, 1, MPFR_RNDN);
    return mpfr_get_d(t, MPFR_RNDN);
}

double Interval::width() const {
    Tmp t(prec() + 8);
    mpfr_sub(t, hi_, lo_, MPFR_RNDU);
    return mpfr_get_d(t, MPFR_RNDU);
}

double Interval::mag() const {
    Tmp a(prec());
    Tmp b(prec());
    mpfr_abs(a, lo_, MPFR_RNDU);
    mpfr_abs(b, hi_, MPFR_RNDU);
    mpfr_max(a, a, b, MPFR_RNDU);
    return mpfr_get_d(a, MPFR_RNDU);
}

double Interval::mig() const {
    if (contains_zero()) return 0.0;
    if (is_positive()) return mpfr_get_d(lo_, MPFR_RNDD);
    Tmp a(prec());
    mpfr_neg(a, hi_, MPFR_RNDD);
    return mpfr_get_d(a, MPFR_RNDD);
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::contains(const Interval& inner) const {
    return mpfr_lessequal_p(lo_, inner.lo_) && mpfr_lessequal_p(inner.hi_, hi_);
}

bool Interval::contains(double v) const { return mpfr_cmp_d(lo_, v) <= 0 && mpfr_cmp_d(hi_, v) >= 0; }

bool Interval::overlaps(const Interval& other) const {
    return mpfr_lessequal_p(lo_, other.hi_) && mpfr_lessequal_p(other.lo_, hi_);
}

bool Interval::certainly_less(const Interval& other) const { return mpfr_less_p(hi_, other.lo_) != 0; }

bool Interval::certainly_le(const Interval& other) const { return mpfr_lessequal_p(hi_, other.lo_) != 0; }

mpz_class Interval::floor_lo() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), lo_, MPFR_RNDD);
    return z;
}

mpz_class Interval::ceil_hi() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), hi_, MPFR_RNDU);
    return z;
}

std::optional<mpz_class> Interval::unique_integer() const {
    mpz_class a;
    mpz_class b;
    mpfr_get_z(a.get_mpz_t(), lo_, MPFR_RNDU);
    mpfr_get_z(b.get_mpz_t(), hi_, MPFR_RNDD);
    if (a == b) return a;
    return std::nullopt;
}

Interval Interval::with_prec(Prec p) const {
    Interval r(Uninit{}, p);
    mpfr_set(r.lo_, lo_, MPFR_RNDD);
    mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
}

std::string Interval::mid_string(int digits) const {
    Tmp t(prec() + 1);
    mpfr_add(t, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(t, t, 1, MPFR_RNDN);
    if (mpfr_zero_p(t.get())) return "0";
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, t.get());
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

std::string Interval::rad_string() const {
    Tmp t(prec() + 1);
    mpfr_sub(t, hi_, lo_, MPFR_RNDU);
    mpfr_div_2ui(t, t, 1, MPFR_RNDU);
    if (mpfr_zero_p(t.get())) return "0";
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.2RUe", t.get());
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

std::string Interval::to_string(int digits) const {
    char* a = nullptr;
    char* b = nullptr;
    mpfr_asprintf(&a, "%.*RDe", digits - 1, lo_);
    mpfr_asprintf(&b, "%.*RUe", digits - 1, hi_);
    std::string s = std::string("[") + a + ", " + b + "]";
    mpfr_free_str(a);
    mpfr_free_str(b);
    return s;
}

Interval& Interval::operator+=(const Interval& rhs) { return *this = *this + rhs; }
Interval& Interval::operator-=(const Interval& rhs) { return *this = *this - rhs; }
Interval& Interval::operator*=(const Interval& rhs) { return *this = *this * rhs; }
Interval& Interval::operator/=(const Interval& rhs) { return *this = *this / rhs; }

Interval operator-(const Interval& x) {
    Interval r(Interval::Uninit{}, x.prec());
    mpfr_neg(r.lo_, x.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, x.lo_, MPFR_RNDU);
    return r;
}

Interval operator+(const Interval& a, const Interval& b) {
    Interval r(Interval::Uninit{}, max_prec(a, b));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval r(Interval::Uninit{}, max_prec(a, b));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    const Prec p = max_prec(a, b);
    Interval r(Interval::Uninit{}, p);
    mpfr_srcptr as[2] = {a.lo_, a.hi_};
    mpfr_srcptr bs[2] = {b.lo_, b.hi_};
    Tmp t(p);
    bool first = true;
    for (auto* x : as) {
        for (auto* y : bs) {
            mpfr_mul(t, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), r.lo_)) mpfr_set(r.lo_, t.get(), MPFR_RNDD);
            mpfr_mul(t, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), r.hi_)) mpfr_set(r.hi_, t.get(), MPFR_RNDU);
            first = false;
        }
    }
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw Error(ErrorKind::DivisionByZero, "interval divisor contains zero");
    const Prec p = max_prec(a, b);
    Interval r(Interval::Uninit{}, p);
    mpfr_srcptr as[2] = {a.lo_, a.hi_};
    mpfr_srcptr bs[2] = {b.lo_, b.hi_};
    Tmp t(p);
    bool first = true;
    for (auto* x : as) {
        for (auto* y : bs) {
            mpfr_div(t, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), r.lo_)) mpfr_set(r.lo_, t.get(), MPFR_RNDD);
            mpfr_div(t, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), r.hi_)) mpfr_set(r.hi_, t.get(), MPFR_RNDU);
            first = false;
        }
    }
    return r;
}

Interval operator*(const Interval& a, long b) {
    Interval r(Interval::Uninit{}, a.prec());
    if (b >= 0) {
        mpfr_mul_si(r.lo_, a.lo_, b, MPFR_RNDD);
        mpfr_mul_si(r.hi_, a.hi_, b, MPFR_RNDU);
    } else {
        mpfr_mul_si(r.lo_, a.hi_, b, MPFR_RNDD);
        mpfr_mul_si(r.hi_, a.lo_, b, MPFR_RNDU);
    }
    return r;
}

Interval operator/(const Interval& a, long b) {
    if (b == 0) throw Error(ErrorKind::DivisionByZero, "division by zero");
    Interval r(Interval::Uninit{}, a.prec());
    if (b > 0) {
        mpfr_div_si(r.lo_, a.lo_, b, MPFR_RNDD);
        mpfr_div_si(r.hi_, a.hi_, b, MPFR_RNDU);
    } else {
        mpfr_div_si(r.lo_, a.hi_, b, MPFR_RNDD);
        mpfr_div_si(r.hi_, a.lo_, b, MPFR_RNDU);
    }
    return r;
}

Interval operator+(const Interval& a, long b) {
    Interval r(Interval::Uninit{}, a.prec());
    mpfr_add_si(r.lo_, a.lo_, b, MPFR_RNDD);
    mpfr_add_si(r.hi_, a.hi_, b, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, long b) {
    Interval r(Interval::Uninit{}, a.prec());
    mpfr_sub_si(r.lo_, a.lo_, b, MPFR_RNDD);
    mpfr_sub_si(r.hi_, a.hi_, b, MPFR_RNDU);
    return r;
}

Interval abs(const Interval& x) {
    if (mpfr_sgn(x.lo_) >= 0) return x;
    if (mpfr_sgn(x.hi_) <= 0) return -x;
    Interval r(Interval::Uninit{}, x.prec());
    mpfr_set_zero(r.lo_, 1);
    Tmp t(x.prec());
    mpfr_neg(t, x.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, t.get(), x.hi_, MPFR_RNDU);
    return r;
}

Interval sqr(const Interval& x) {
    Interval a = abs(x);
    Interval r(Interval::Uninit{}, x.prec());
    mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval sqrt(const Interval& x) {
    if (mpfr_sgn(x.hi_) < 0) throw Error(ErrorKind::OutOfDomain, "sqrt of a negative interval");
    Interval r(Interval::Uninit{}, x.prec());
    if (mpfr_sgn(x.lo_) <= 0) {
        mpfr_set_zero(r.lo_, 1);
    } else {
        mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
    }
    mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

Interval exp(const Interval& x) {
    Interval r(Interval::Uninit{}, x.prec());
    mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

Interval log(const Interval& x) {
    if (mpfr_sgn(x.lo_) <= 0) throw Error(ErrorKind::OutOfDomain, "log of an interval reaching zero");
    Interval r(Interval::Uninit{}, x.prec());
    mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

namespace {

// sin or cos over an interval: endpoint values plus any interior extremum.
// Extrema of the chosen function sit at phases (as fractions of 2pi):
// sin: max 1/4, min 3/4;  cos: max 0, min 1/2.
Interval trig(const Interval& x, bool is_sin) {
    const Prec p = x.prec();
    Interval two_pi = Interval::pi(p) * 2;
    Tmp width(p + 8);
    mpfr_sub(width, x.hi(), x.lo(), MPFR_RNDU);
    if (mpfr_cmp(width.get(), two_pi.lo()) >= 0) {
        return Interval(mpq_class(-1), mpq_class(1), p);
    }
    auto f = [is_sin](mpfr_ptr out, mpfr_srcptr in, mpfr_rnd_t rnd) {
        if (is_sin) {
            mpfr_sin(out, in, rnd);
        } else {
            mpfr_cos(out, in, rnd);
        }
    };
    Tmp a(p);
    Tmp b(p);
    Tmp lo(p);
    Tmp hi(p);
    f(a, x.lo(), MPFR_RNDD);
    f(b, x.hi(), MPFR_RNDD);
    mpfr_min(lo, a.get(), b.get(), MPFR_RNDD);
    f(a, x.lo(), MPFR_RNDU);
    f(b, x.hi(), MPFR_RNDU);
    mpfr_max(hi, a.get(), b.get(), MPFR_RNDU);
    const bool has_max = is_sin ? may_contain_phase(x, 1, 4) : may_contain_phase(x, 0, 1);
    const bool has_min = is_sin ? may_contain_phase(x, 3, 4) : may_contain_phase(x, 1, 2);
    if (has_max) mpfr_set_si(hi, 1, MPFR_RNDU);
    if (has_min) mpfr_set_si(lo, -1, MPFR_RNDD);
    return Interval::from_bounds(lo.get(), hi.get());
}

}  // namespace

Interval sin(const Interval& x) { return trig(x, true); }

Interval cos(const Interval& x) { return trig(x, false); }

Interval atan2(const Interval& y, const Interval& x) {
    // Valid only for boxes that do not meet the negative real axis; callers go
    // through arg(), which handles the cut.
    const Prec p = max_prec(x, y);
    Interval r(Interval::Uninit{}, p);
    mpfr_srcptr xs[2] = {x.lo_, x.hi_};
    mpfr_srcptr ys[2] = {y.lo_, y.hi_};
    Tmp t(p);
    bool first = true;
    for (auto* xx : xs) {
        for (auto* yy : ys) {
            mpfr_atan2(t, yy, xx, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), r.lo_)) mpfr_set(r.lo_, t.get(), MPFR_RNDD);
            mpfr_atan2(t, yy, xx, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), r.hi_)) mpfr_set(r.hi_, t.get(), MPFR_RNDU);
            first = false;
        }
    }
    return r;
}

Interval hull(const Interval& a, const Interval& b) {
    Interval r(Interval::Uninit{}, max_prec(a, b));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval max(const Interval& a, const Interval& b) {
    Interval r(Interval::Uninit{}, max_prec(a, b));
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval min(const Interval& a, const Interval& b) {
    Interval r(Interval::Uninit{}, max_prec(a, b));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
    if (!a.overlaps(b)) return std::nullopt;
    Interval r(Interval::Uninit{}, max_prec(a, b));
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval pow(const Interval& x, long n) {
    if (n < 0) return Interval(1L, x.prec()) / pow(x, -n);
    if (n == 0) return Interval(1L, x.prec());
    if (n % 2 == 0) return pow(sqr(x), n / 2);
    Interval r = x;
    Interval base = x;
    long e = n - 1;
    // Odd powers are monotone, so repeated products stay tight enough here.
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = sqr(base);
    }
    return r;
}

double ComplexBox::width() const { return std::max(re.width(), im.width()); }

ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) { return {a.re + b.re, a.im + b.im}; }

ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) { return {a.re - b.re, a.im - b.im}; }

ComplexBox operator-(const ComplexBox& a) { return {-a.re, -a.im}; }

ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexBox operator*(const ComplexBox& a, const Interval& s) { return {a.re * s, a.im * s}; }

ComplexBox operator/(const ComplexBox& a, const ComplexBox& b) {
    Interval d = norm_sq(b);
    ComplexBox n = a * conj(b);
    return {n.re / d, n.im / d};
}

ComplexBox conj(const ComplexBox& z) { return {z.re, -z.im}; }

Interval norm_sq(const ComplexBox& z) { return sqr(z.re) + sqr(z.im); }

Interval abs(const ComplexBox& z) { return sqrt(norm_sq(z)); }

ComplexBox pow(const ComplexBox& z, long n) {
    const Prec p = z.prec();
    if (n < 0) {
        ComplexBox one(Interval(1L, p), Interval(p));
        return one / pow(z, -n);
    }
    ComplexBox result(Interval(1L, p), Interval(p));
    ComplexBox base = z;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

ComplexBox cexp(const ComplexBox& z) {
    Interval m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

Angle arg(const ComplexBox& z, Branch branch) {
    if (z.contains_zero()) throw Error(ErrorKind::DivisionByZero, "argument of a box containing zero");
    const Prec p = z.prec();
    Interval two_pi = Interval::pi(p) * 2;
    const bool left = z.re.is_negative();
    const bool upper = z.im.is_positive();
    const bool lower = z.im.is_negative();
    Angle out{Interval(p), false};
    if (branch == Branch::Principal) {
        if (!left || upper || lower) {
            // atan2 is continuous on the box.
            out.value = atan2(z.im, z.re);
            return out;
        }
        // Box meets the negative real axis: lift the lower-half corners by 2pi.
        ComplexBox flipped = -z;  // now in the right half-plane
        Interval a = atan2(flipped.im, flipped.re) + Interval::pi(p);
        out.value = a;
        out.straddles_cut = true;
        return out;
    }
    // Branch::Positive, [0, 2pi)
    if (upper) {
        out.value = atan2(z.im, z.re);
        return out;
    }
    if (lower) {
        out.value = atan2(z.im, z.re) + two_pi;
        return out;
    }
    if (left) {
        ComplexBox flipped = -z;
        out.value = atan2(flipped.im, flipped.re) + Interval::pi(p);
        return out;
    }
    // Straddles the positive real axis (or is exactly on it).
    out.value = atan2(z.im, z.re);
    out.straddles_cut = !(mpfr_zero_p(z.im.lo()) && mpfr_zero_p(z.im.hi()));
    if (out.value.contains_zero() && out.value.is_point()) out.straddles_cut = false;
    return out;
}

}  // namespace thuefam
