#pragma once

// Outward-rounded interval arithmetic on MPFR endpoints, plus rectangular
// complex boxes built on top of it. Every operation returns an enclosure of
// the exact result over all points of its inputs.

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>

namespace thuefam {

using Prec = mpfr_prec_t;

inline constexpr Prec kDefaultPrec = 128;

/// Number of bits b with 2^-b <= eps.
Prec bits_for(double eps);

class Interval {
public:
    explicit Interval(Prec prec = kDefaultPrec);
    Interval(long value, Prec prec);
    Interval(const mpz_class& value, Prec prec);
    Interval(const mpq_class& value, Prec prec);
    Interval(const mpq_class& lo, const mpq_class& hi, Prec prec);

    /// Point interval holding a double exactly (prec is raised to 53 if lower).
    static Interval from_double(double value, Prec prec);
    /// Enclosure of m * 2^-shift, exact when prec is large enough.
    static Interval dyadic(const mpz_class& m, long shift, Prec prec);
    static Interval pi(Prec prec);
    static Interval from_bounds(mpfr_srcptr lo, mpfr_srcptr hi);

    Interval(const Interval& other);
    Interval(Interval&& other) noexcept;
    Interval& operator=(const Interval& other);
    Interval& operator=(Interval&& other) noexcept;
    ~Interval();

    Prec prec() const { return mpfr_get_prec(lo_); }
    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }

    double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double mid() const;
    double width() const;
    /// Upper bound of |x| over the interval.
    double mag() const;
    /// Lower bound of |x| over the interval.
    double mig() const;

    bool contains_zero() const;
    bool contains(const Interval& inner) const;
    bool contains(double v) const;
    bool is_positive() const { return mpfr_sgn(lo_) > 0; }
    bool is_negative() const { return mpfr_sgn(hi_) < 0; }
    bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }
    bool overlaps(const Interval& other) const;
    /// hi(this) < lo(other)
    bool certainly_less(const Interval& other) const;
    bool certainly_le(const Interval& other) const;

    mpz_class floor_lo() const;
    mpz_class ceil_hi() const;
    /// The single integer inside, if the interval contains exactly one.
    std::optional<mpz_class> unique_integer() const;

    Interval with_prec(Prec prec) const;
    /// Midpoint in decimal with the given number of significant digits.
    std::string mid_string(int digits = 40) const;
    /// Radius rounded up, three significant digits.
    std::string rad_string() const;
    std::string to_string(int digits = 20) const;

    Interval& operator+=(const Interval& rhs);
    Interval& operator-=(const Interval& rhs);
    Interval& operator*=(const Interval& rhs);
    Interval& operator/=(const Interval& rhs);

    friend Interval operator-(const Interval& x);
    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, long b);
    friend Interval operator*(long a, const Interval& b) { return b * a; }
    friend Interval operator/(const Interval& a, long b);
    friend Interval operator+(const Interval& a, long b);
    friend Interval operator-(const Interval& a, long b);

    friend Interval abs(const Interval& x);
    friend Interval sqr(const Interval& x);
    friend Interval sqrt(const Interval& x);
    friend Interval exp(const Interval& x);
    friend Interval log(const Interval& x);
    friend Interval sin(const Interval& x);
    friend Interval cos(const Interval& x);
    friend Interval atan2(const Interval& y, const Interval& x);
    friend Interval hull(const Interval& a, const Interval& b);
    friend Interval max(const Interval& a, const Interval& b);
    friend Interval min(const Interval& a, const Interval& b);
    friend std::optional<Interval> intersect(const Interval& a, const Interval& b);

private:
    struct Uninit {};
    Interval(Uninit, Prec prec);

    mpfr_t lo_;
    mpfr_t hi_;
};

Interval pow(const Interval& x, long n);

/// Rectangular enclosure of a complex number.
struct ComplexBox {
    Interval re;
    Interval im;

    explicit ComplexBox(Prec prec = kDefaultPrec) : re(prec), im(prec) {}
    ComplexBox(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

    Prec prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    double width() const;

    friend ComplexBox operator+(const ComplexBox& a, const ComplexBox& b);
    friend ComplexBox operator-(const ComplexBox& a, const ComplexBox& b);
    friend ComplexBox operator-(const ComplexBox& a);
    friend ComplexBox operator*(const ComplexBox& a, const ComplexBox& b);
    friend ComplexBox operator*(const ComplexBox& a, const Interval& s);
    friend ComplexBox operator*(const Interval& s, const ComplexBox& a) { return a * s; }
    friend ComplexBox operator/(const ComplexBox& a, const ComplexBox& b);
};

ComplexBox conj(const ComplexBox& z);
Interval abs(const ComplexBox& z);
Interval norm_sq(const ComplexBox& z);
ComplexBox pow(const ComplexBox& z, long n);
ComplexBox cexp(const ComplexBox& z);

enum class Branch {
    Principal,  ///< (-pi, pi], cut along the negative real axis
    Positive,   ///< [0, 2pi), cut along the positive real axis
};

struct Angle {
    Interval value;
    /// True when the box touches the branch cut; value is then a continuous
    /// enclosure that may leave the nominal range by less than pi.
    bool straddles_cut = false;
};

/// Enclosure of the argument of every point of a box not containing zero.
Angle arg(const ComplexBox& z, Branch branch = Branch::Principal);

}  // namespace thuefam
