#pragma once

// Numerical replay of the effective argument for one solution: the three
// terms of the Siegel unit equation, the ordering of their moduli, the chain
// of elementary inequalities and the linear form Lambda of the last case.

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "thuefam/family.hpp"
#include "thuefam/interval.hpp"
#include "thuefam/reduction.hpp"

namespace thuefam {

struct TraceConfig {
    double eps = 1e-30;      ///< target width of the term enclosures
    double real_tol = 1e-20; ///< required width of Re(T_i)
    long max_bits = 8192;    ///< escalation cap
};

/// The two terms of largest modulus.
enum class TermCase { T1T2, T1T3, T2T3 };
std::string to_string(TermCase c);

struct TermOrder {
    TermCase pair = TermCase::T1T2;
    /// Indices 0..2 by decreasing modulus (a, b, c).
    std::array<int, 3> order{0, 1, 2};
    /// Whether |a| > |b| is certified; the case only needs c to be certified.
    bool top_pair_certain = false;
    /// |a| <= 2|b| and |b| <= 2|a|.
    bool domination_holds = false;
    /// Lower bound of min(2|b| - |a|, 2|a| - |b|).
    double domination_margin = 0.0;
};

/// Orders three complex numbers summing to zero. Throws AmbiguousOrdering
/// when the smallest modulus cannot be separated from the other two.
TermOrder classify_terms(const std::array<ComplexBox, 3>& t);

struct SiegelTrace {
    long n = 0;
    long ell = 0;
    Prec bits = 0;
    /// Product forms T1, T2, T3.
    std::array<ComplexBox, 3> T;
    /// The same terms from the sine expressions.
    std::array<ComplexBox, 3> T_sine;
    std::array<Interval, 3> sines;  ///< sin(delta + n theta), sin(v + ell theta), sin(v - delta + (ell - n) theta)
    /// Sine enclosures that contain 0 at the final precision.
    std::array<bool, 3> degenerate_sine{false, false, false};
    Interval theta;  ///< arg eps' in [0, 2 pi)
    Interval delta;  ///< arg alpha'
    Interval v;      ///< arg xi1'
    ComplexBox sum;  ///< T1 + T2 + T3
    bool sum_contains_zero = false;
    /// Largest width of the Re(T_i) enclosures; each must contain 0.
    double real_width = 0.0;
    bool real_parts_contain_zero = false;
    bool forms_agree = false;
    /// Largest |mid(T_i) - mid(T_sine_i)|.
    double form_gap = 0.0;
    /// Empty when the ordering was still ambiguous at the precision cap.
    std::optional<TermOrder> order;
};

/// Escalates precision until Re(T_i) is below real_tol and the ordering is
/// certified (or the cap is hit). Throws PrecisionExhausted when the real
/// parts cannot be certified.
SiegelTrace siegel_terms(const FormFamily& fam, long n, const Decomposition& dec, const TraceConfig& cfg = {});

/// Throws AmbiguousOrdering when the trace carries no certified ordering.
TermOrder classify_case(const SiegelTrace& trace);

struct LedgerRow {
    std::string id;
    std::string statement;
    bool applicable = true;
    /// Empty for rows that only report an empirical constant.
    std::optional<bool> holds;
    std::optional<Interval> lhs;
    std::optional<Interval> rhs;
    /// Value of the unspecified constant that makes the row tight.
    std::optional<Interval> empirical;
    std::string note;
};

std::vector<LedgerRow> inequality_ledger(const FormFamily& fam, long n, const mpz_class& x, const mpz_class& y,
                                         const mpz_class& k, const SolutionReduction& red,
                                         const SiegelTrace& trace, const TraceConfig& cfg = {});

struct LambdaData {
    ComplexBox rho_n;
    ComplexBox mu_n;
    ComplexBox lambda1;  ///< principal log(conj(eps') / eps')
    ComplexBox lambda2;  ///< principal log(conj(mu_n) / mu_n)
    ComplexBox Lambda;   ///< principal log(conj(mu_n eps'^ell) / (mu_n eps'^ell))
    Interval nu;         ///< conj(eps') / eps' = e^(2 i pi nu), nu in [0, 1)
    Interval theta_n;    ///< conj(mu_n) / mu_n = e^(2 i pi theta_n)
    /// Lambda - ell 2i pi nu - 2i pi theta_n = 2i pi h
    long h = 0;
    /// The same with principal lambda1, lambda2.
    long h_principal = 0;
    bool h_bound_holds = false;  ///< |h|, |h_principal| <= |ell| + 2
    bool ell_negative = false;
    /// |rho_n eps^ell + mu_n eps'^ell - conj(mu_n eps'^ell)|
    Interval identity_residual;
    ComplexBox e_Lambda_minus_one;
    bool lemma3b_applicable = false;  ///< |e^Lambda - 1| < 1/2
    bool lemma3b_holds = false;       ///< |Lambda| <= 2 |e^Lambda - 1|
    double lemma3b_margin = 0.0;
    Interval ratio;        ///< |rho_n eps^ell / (mu_n eps'^ell)|
    Interval ratio_shape;  ///< eps^(-(n + 3|ell|)/2) k^kappa9
    Interval kappa49;         ///< ratio / ratio_shape
    Interval height_mu;       ///< h(mu_n)
    Interval kappa46;         ///< h(mu_n) / (n + log k)
};

/// Throws NotThirdCase unless T2, T3 are the dominant terms; PrecisionExhausted
/// when a logarithm sits on its branch cut at the precision cap.
LambdaData lambda_machinery(const FormFamily& fam, long n, const SolutionReduction& red, const SiegelTrace& trace,
                            const mpz_class& k, const TraceConfig& cfg = {});

struct SolutionTrace {
    mpz_class x;
    mpz_class y;
    mpz_class k;
    SolutionReduction reduction;
    SiegelTrace trace;
    std::vector<LedgerRow> ledger;
    std::optional<LambdaData> lambda;
};

/// Full pipeline for one solution with 0 < |F_n(x, y)| <= k. Throws
/// InvalidParameter when |F_n(x, y)| > k, plus the errors of decompose_solution.
SolutionTrace trace_solution(const FormFamily& fam, long n, const mpz_class& x, const mpz_class& y,
                             const mpz_class& k, const TraceConfig& cfg = {});

}  // namespace thuefam
