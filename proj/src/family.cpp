#include "thuefam/family.hpp"

#include <sstream>

#include "thuefam/errors.hpp"
#include "thuefam/intcubic.hpp"

namespace thuefam {

mpz_class BinaryCubicForm::operator()(const mpz_class& x, const mpz_class& y) const {
    // ((a0 x + a1 y) x + a2 y^2) x + a3 y^3
    mpz_class r = a[0] * x + a[1] * y;
    r *= x;
    const mpz_class y2 = y * y;
    r += a[2] * y2;
    r *= x;
    r += a[3] * y2 * y;
    return r;
}

BinaryCubicForm BinaryCubicForm::operator-() const { return {{-a[0], -a[1], -a[2], -a[3]}}; }

std::string BinaryCubicForm::to_string() const {
    std::ostringstream os;
    os << a[0].get_str() << ' ' << a[1].get_str() << ' ' << a[2].get_str() << ' ' << a[3].get_str();
    return os.str();
}

BinaryCubicForm negative_n_swap(const BinaryCubicForm& f) { return {{f.a[3], f.a[2], f.a[1], f.a[0]}}; }

namespace {

BinaryCubicForm monic_of(const BinaryCubicForm& f) {
    const mpz_class& a0 = f.a[0];
    return {{1, f.a[1], a0 * f.a[2], a0 * a0 * f.a[3]}};
}

}  // namespace

bool has_linear_factor(const BinaryCubicForm& f) {
    if (f.a[0] == 0) return true;
    const BinaryCubicForm m = monic_of(f);
    return !integer_roots(IntCubic{1, m.a[1], m.a[2], m.a[3]}).empty();
}

Normalization normalize(const BinaryCubicForm& f) {
    if (has_linear_factor(f)) throw Error(ErrorKind::ReducibleForm, "form has a rational linear factor");
    Normalization n{monic_of(f), f.a[0]};
    if (cubic_discriminant(n.monic.a) > 0) throw Error(ErrorKind::TotallyReal, "form has three real roots");
    return n;
}

// ---------------------------------------------------------------------------

namespace {

// Certifies sigma_real(eps) > 1 for a unit eps != 1.
bool real_embedding_exceeds_one(const FieldElement& eps) {
    if (eps.is_rational()) return eps[0] > 1;
    for (long bits = 32; bits <= 4096; bits *= 2) {
        const Embedding e = embed_bits(eps, bits);
        if (mpfr_cmp_ui(e.real.lo(), 1) > 0) return true;
        if (mpfr_cmp_ui(e.real.hi(), 1) < 0) return false;
    }
    throw Error(ErrorKind::PrecisionExhausted, "cannot compare unit with 1");
}

}  // namespace

FormFamily::FormFamily(FieldElement alpha, FieldElement epsilon, mpz_class scale, std::optional<long> D)
    : alpha_(std::move(alpha)), epsilon_(std::move(epsilon)), scale_(std::move(scale)), D_(D) {
    if (alpha_.field() != epsilon_.field()) throw Error(ErrorKind::FieldMismatch, "alpha and epsilon differ in field");
    if (alpha_.is_rational()) throw Error(ErrorKind::ReducibleForm, "alpha is rational");
    if (!alpha_.is_integral()) throw Error(ErrorKind::InvalidParameter, "alpha is not an algebraic integer");
    if (scale_ == 0) throw Error(ErrorKind::InvalidParameter, "scale must be nonzero");
    if (!epsilon_.is_integral()) throw Error(ErrorKind::NotAUnit, "epsilon is not integral");
    const mpq_class n = norm(epsilon_);
    if (n != 1 && n != -1) throw Error(ErrorKind::NotAUnit, "norm of epsilon is not +-1");
    if (!real_embedding_exceeds_one(epsilon_)) throw Error(ErrorKind::NotAUnit, "epsilon is not > 1");
}

FieldElement FormFamily::beta(long n) const { return epsilon_.pow(n) * alpha_; }

BinaryCubicForm FormFamily::form_at(long n) const {
    const auto cp = beta(n).charpoly();
    BinaryCubicForm f;
    for (int i = 0; i < 4; ++i) {
        if (cp[i].get_den() != 1) throw Error(ErrorKind::InvalidParameter, "non-integral coefficient");
        f.a[i] = cp[i].get_num();
    }
    return f;
}

bool FormFamily::is_degenerate(long n) const { return beta(n).is_rational(); }

FormFamily family_from_form(const BinaryCubicForm& f, const std::array<mpq_class, 3>& epsilon_coords) {
    const Normalization nz = normalize(f);
    CubicField k(nz.monic.a);
    return FormFamily(FieldElement::generator(k), FieldElement(k, epsilon_coords), nz.scale);
}

FormFamily example_family(long D) {
    if (D == -1) throw Error(ErrorKind::InvalidParameter, "D = -1 gives D^3 + 1 = 0");
    if (D == 0) throw Error(ErrorKind::InvalidParameter, "D = 0 gives eps = 1");
    const mpz_class d(D);
    CubicField k({1, 3 * d, 3 * d * d, -1});
    // theta = eps^-1 satisfies theta (theta^2 + 3D theta + 3D^2) = 1
    FieldElement eps(k, 3 * d * d, 3 * d, 1);
    return FormFamily(eps, eps, 1, D);
}

FormFamily swapped_family(const FormFamily& fam) {
    const mpq_class lead = -norm(fam.alpha());
    FieldElement a = lead * fam.alpha().inverse();
    return FormFamily(a, fam.epsilon(), lead.get_num());
}

// ---------------------------------------------------------------------------

bool satisfies_recurrence(const std::vector<mpz_class>& a, const mpz_class& c2, const mpz_class& c1,
                          const mpz_class& c0) {
    for (size_t i = 0; i + 3 < a.size(); ++i) {
        if (a[i + 3] != c2 * a[i + 2] + c1 * a[i + 1] + c0 * a[i]) return false;
    }
    return true;
}

CoefficientSequence coefficient_sequence(long D, long n_lo, long n_hi) {
    if (n_lo > n_hi) throw Error(ErrorKind::InvalidParameter, "empty range");
    const FormFamily fam = example_family(D);
    CoefficientSequence s;
    s.n_first = n_lo;
    const FieldElement& eps = fam.epsilon();
    FieldElement p = eps.pow(n_lo + 1);
    for (long n = n_lo; n <= n_hi; ++n) {
        const mpq_class t = trace(p);
        s.a.push_back(t.get_num());
        p *= eps;
    }
    const mpz_class d(D);
    s.minpoly_recurrence_holds = satisfies_recurrence(s.a, 3 * d * d, 3 * d, 1);
    s.swapped_recurrence_holds = satisfies_recurrence(s.a, 3 * d, 3 * d * d, 1);
    // a_1 from the initial values a_0 = 3D^2, a_-1 = 3, a_-2 = -3D under each order.
    const mpz_class a0 = trace(eps).get_num();
    const mpz_class am1 = trace(FieldElement::one(fam.field())).get_num();
    const mpz_class am2 = trace(eps.pow(-1)).get_num();
    s.a1_from_trace = trace(eps.pow(2)).get_num();
    s.a1_minpoly_order = 3 * d * d * a0 + 3 * d * am1 + am2;
    s.a1_swapped_order = 3 * d * a0 + 3 * d * d * am1 + am2;
    return s;
}

SwapCheck swap_identity_check(const FormFamily& fam, long n) {
    SwapCheck c;
    c.lhs = fam.form_at(-n);
    c.rhs = -negative_n_swap(fam.form_at(n - 2));
    c.holds = c.lhs == c.rhs;
    return c;
}

}  // namespace thuefam
