#pragma once

// Lower bounds for linear forms in logarithms in the shape used by the
// effective argument, the sine bound derived from them, and the two
// elementary exponential estimates. The constants are inputs: no numeric
// value of c0, c1 or c2 is known here.

#include <string>
#include <utility>
#include <vector>

#include "thuefam/interval.hpp"
#include "thuefam/tracer.hpp"

namespace thuefam {

/// Placeholders, NOT proven constants.
struct BakerConfig {
    double c0 = 1.0;
    double c1 = 1.0;
    double c2_default = 1.0;

    /// Throws InvalidParameter unless all constants are positive.
    void validate() const;
};

/// exp(-c0 D^5 log D logA0 logA1 logA2 log B). Requires D >= 1,
/// logA_i >= 1/D and B >= e; throws InvalidParameter otherwise.
Interval prop1_bound(const BakerConfig& cfg, long D, double logA0, double logA1, double logA2, double B,
                     Prec prec = 128);

/// exp(-c1 log B logA1 logA2) with logA_i = max(e, h_i). Requires B >= 2.
Interval prop2_bound(const BakerConfig& cfg, double h1, double h2, double B, Prec prec = 128);

/// (|n| + 2)^-c2
Interval sine_bound(long n, double c2, Prec prec = 128);

struct C2Calibration {
    Interval delta1;
    Interval delta2;
    long N = 0;
    /// Smallest c with |sin(delta1 + n delta2)| (|n| + 2)^c >= 1 over every
    /// certified n, rounded up.
    double c2 = 0.0;
    long worst_n = 0;
    /// n with 0 < |n| <= N whose sine enclosure contains 0.
    std::vector<long> skipped;
};

/// (delta, theta) = (arg alpha', arg eps') in [0, 2 pi), enclosed at about bits.
std::pair<Interval, Interval> family_angles(const FormFamily& fam, long bits = 160);

/// Scans 0 < |n| <= N. Throws DegenerateAngle when no n can be certified.
C2Calibration calibrate_c2(const Interval& delta1, const Interval& delta2, long N);

/// |sin(delta1 + n delta2)| (|n| + 2)^c2 >= 1 for every certified n.
bool c2_round_trip(const C2Calibration& cal);

/// The last step of the sine bound, for gamma_j = e^(i delta_j).
struct ChainCheck {
    long n = 0;
    long ell = 0;             ///< nearest integer to (delta1 + n delta2) / pi, floor on ties
    Interval sine_abs;        ///< |sin(delta1 + n delta2)|
    Interval literal_rhs;     ///< (sqrt 2 / 2) |gamma1 gamma2^n - 1|
    Interval corrected_rhs;   ///< (sqrt 2 / 2) |(-1)^ell gamma1 gamma2^n - 1|
    bool literal_holds = false;
    bool literal_refuted = false;
    bool corrected_holds = false;
};

ChainCheck corollary2_chain(const Interval& delta1, const Interval& delta2, long n, Prec prec = 128);

struct Lemma3Check {
    Interval lhs;
    Interval rhs;
    bool holds = false;  ///< lhs <= rhs certified
    double margin = 0.0; ///< lower bound of rhs - lhs
};

/// |e^t - 1| <= |t| max(1, |e^t|)
Lemma3Check lemma3a(const ComplexBox& t);
/// |log z| <= 2 |z - 1| for |z - 1| < 1/2 (principal log); throws OutOfDomain otherwise.
Lemma3Check lemma3b(const ComplexBox& z);

/// The three-logarithm bound applied to one third-case trace.
struct ThirdCaseBound {
    long degree = 6;
    double logA0 = 0.0;
    double logA1 = 0.0;
    double logA2 = 0.0;
    double B = 0.0;
    /// log A2 / log(k eps^n)
    double kappa51 = 0.0;
    Interval bound;
    Interval observed;  ///< |Lambda|
    bool applicable = false;  ///< Lambda != 0 certified
    bool below_observed = false;
};

ThirdCaseBound prop1_third_case(const BakerConfig& cfg, const FormFamily& fam, long n, const mpz_class& k,
                                const SolutionReduction& red, const LambdaData& lam);

/// Smallest c1 with prop2_bound <= |gamma1 gamma2^b - 1| for 1 <= b <= N,
/// gamma1 = conj(eps')/eps' and gamma2 = e^(i delta2).
struct C1Calibration {
    double c1 = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    long N = 0;
    std::vector<long> skipped;
};

C1Calibration calibrate_c1(const ComplexBox& gamma1, const ComplexBox& gamma2, double h1, double h2, long N);

}  // namespace thuefam
