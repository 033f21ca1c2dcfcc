#include "thuefam/io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thuefam/errors.hpp"

namespace thuefam {

namespace {

std::string str(const mpz_class& z) { return z.get_str(); }
std::string str(const mpq_class& q) { return q.get_str(); }

json opt(const std::optional<Interval>& x) { return x ? to_json(*x) : json(nullptr); }

const char* case_tag(TermCase c) {
    switch (c) {
    case TermCase::T1T2: return "T1T2_dominant";
    case TermCase::T1T3: return "T1T3_dominant";
    case TermCase::T2T3: return "T2T3_dominant";
    }
    return "";
}

}  // namespace

json to_json(const Interval& x) {
    // the decimal midpoint is not the binary one, so the radius absorbs the gap
    const Prec p = x.prec();
    const int digits = std::clamp(static_cast<int>(static_cast<double>(p) * 0.30103) + 1, 17, 60);
    const std::string m = x.mid_string(digits);
    mpfr_t mid, a, b;
    mpfr_inits2(p + 64, mid, a, b, nullptr);
    mpfr_set_str(mid, m.c_str(), 10, MPFR_RNDN);
    mpfr_sub(a, x.hi(), mid, MPFR_RNDU);
    mpfr_sub(b, mid, x.lo(), MPFR_RNDU);
    mpfr_max(a, a, b, MPFR_RNDU);
    // mid itself was rounded from the decimal string
    mpfr_set_str(b, m.c_str(), 10, MPFR_RNDU);
    mpfr_sub(b, b, mid, MPFR_RNDU);
    mpfr_add(a, a, b, MPFR_RNDU);
    mpfr_set_str(b, m.c_str(), 10, MPFR_RNDD);
    mpfr_sub(b, mid, b, MPFR_RNDU);
    mpfr_add(a, a, b, MPFR_RNDU);
    std::string r = "0";
    if (!mpfr_zero_p(a)) {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.2RUe", a);
        r = buf;
        mpfr_free_str(buf);
    }
    mpfr_clears(mid, a, b, nullptr);
    return {{"mid", m}, {"rad", r}};
}

json to_json(double v) { return to_json(Interval::from_double(v, 53)); }

json to_json(const ComplexBox& z) { return {{"re", to_json(z.re)}, {"im", to_json(z.im)}}; }

json to_json(const FieldElement& x) {
    json c = json::array();
    for (const mpq_class& q : x.coords()) c.push_back(str(q));
    return c;
}

json to_json(const BinaryCubicForm& f) {
    json c = json::array();
    for (const mpz_class& a : f.a) c.push_back(str(a));
    return c;
}

json to_json(const Decomposition& d) {
    return {{"ell", d.ell}, {"xi", to_json(d.xi)}, {"norm_abs", str(d.norm_abs)}, {"balance", to_json(d.balance)}};
}

json to_json(const SolutionRecord& r) {
    json j = {{"n", r.n}, {"x", str(r.x)}, {"y", str(r.y)}, {"value", str(r.value)}, {"primitive", r.primitive}};
    if (r.decomposition) j["decomposition"] = to_json(*r.decomposition);
    return j;
}

json to_json(const TermOrder& o) {
    return {{"case", case_tag(o.pair)},
            {"order", {o.order[0] + 1, o.order[1] + 1, o.order[2] + 1}},
            {"top_pair_certain", o.top_pair_certain},
            {"domination_holds", o.domination_holds},
            {"domination_margin", to_json(o.domination_margin)}};
}

json to_json(const SiegelTrace& t) {
    json j;
    j["n"] = t.n;
    j["ell"] = t.ell;
    j["bits"] = t.bits;
    for (int i = 0; i < 3; ++i) {
        j["T"].push_back(to_json(t.T[i]));
        j["T_sine"].push_back(to_json(t.T_sine[i]));
        j["sines"].push_back(to_json(t.sines[i]));
        j["degenerate_sine"].push_back(t.degenerate_sine[i]);
    }
    j["theta"] = to_json(t.theta);
    j["delta"] = to_json(t.delta);
    j["v"] = to_json(t.v);
    j["sum"] = to_json(t.sum);
    j["sum_contains_zero"] = t.sum_contains_zero;
    j["real_width"] = to_json(t.real_width);
    j["real_parts_contain_zero"] = t.real_parts_contain_zero;
    j["forms_agree"] = t.forms_agree;
    j["form_gap"] = to_json(t.form_gap);
    j["order"] = t.order ? to_json(*t.order) : json(nullptr);
    return j;
}

json to_json(const LedgerRow& r) {
    json j = {{"id", r.id}, {"statement", r.statement}, {"applicable", r.applicable}};
    j["holds"] = r.holds ? json(*r.holds) : json(nullptr);
    j["lhs"] = opt(r.lhs);
    j["rhs"] = opt(r.rhs);
    j["empirical"] = opt(r.empirical);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

json to_json(const LambdaData& l) {
    return {{"rho_n", to_json(l.rho_n)},
            {"mu_n", to_json(l.mu_n)},
            {"lambda1", to_json(l.lambda1)},
            {"lambda2", to_json(l.lambda2)},
            {"Lambda", to_json(l.Lambda)},
            {"nu", to_json(l.nu)},
            {"theta_n", to_json(l.theta_n)},
            {"h", l.h},
            {"h_principal", l.h_principal},
            {"h_bound_holds", l.h_bound_holds},
            {"ell_negative", l.ell_negative},
            {"identity_residual", to_json(l.identity_residual)},
            {"e_Lambda_minus_one", to_json(l.e_Lambda_minus_one)},
            {"lemma3b_applicable", l.lemma3b_applicable},
            {"lemma3b_holds", l.lemma3b_holds},
            {"lemma3b_margin", to_json(l.lemma3b_margin)},
            {"ratio", to_json(l.ratio)},
            {"ratio_shape", to_json(l.ratio_shape)},
            {"kappa49", to_json(l.kappa49)},
            {"height_mu", to_json(l.height_mu)},
            {"kappa46", to_json(l.kappa46)}};
}

json to_json(const ThirdCaseBound& b) {
    return {{"degree", b.degree},
            {"logA0", to_json(b.logA0)},
            {"logA1", to_json(b.logA1)},
            {"logA2", to_json(b.logA2)},
            {"B", to_json(b.B)},
            {"kappa51", to_json(b.kappa51)},
            {"bound", to_json(b.bound)},
            {"observed", to_json(b.observed)},
            {"applicable", b.applicable},
            {"below_observed", b.below_observed}};
}

json to_json(const SolutionTrace& t) {
    json j;
    j["x"] = str(t.x);
    j["y"] = str(t.y);
    j["k"] = str(t.k);
    j["value"] = str(t.reduction.value);
    j["decomposition"] = to_json(t.reduction.dec);
    j["kappa9"] = opt(t.reduction.kappa9);
    j["sandwich_holds"] = t.reduction.sandwich_holds;
    j["siegel"] = to_json(t.trace);
    j["case"] = t.trace.order ? json(case_tag(t.trace.order->pair)) : json(nullptr);
    j["ledger"] = json::array();
    for (const LedgerRow& r : t.ledger) j["ledger"].push_back(to_json(r));
    j["lambda"] = t.lambda ? to_json(*t.lambda) : json(nullptr);
    return j;
}

json family_to_json(const FormFamily& fam) {
    if (fam.D()) return {{"D", *fam.D()}};
    json f = json::array();
    for (const mpz_class& c : fam.field().min_poly()) f.push_back(str(c));
    return {{"field", f}, {"alpha", to_json(fam.alpha())}, {"epsilon", to_json(fam.epsilon())},
            {"scale", str(fam.scale())}};
}

mpz_class mpz_from_json(const json& j) {
    if (j.is_number_integer()) return mpz_class(j.get<long>());
    if (j.is_string()) {
        mpz_class z;
        if (z.set_str(j.get<std::string>(), 10) == 0) return z;
    }
    throw Error(ErrorKind::InvalidParameter, "expected an integer, got " + j.dump());
}

mpq_class mpq_from_json(const json& j) {
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    if (j.is_string()) {
        mpq_class q;
        if (q.set_str(j.get<std::string>(), 10) == 0 && q.get_den() != 0) {
            q.canonicalize();
            return q;
        }
    }
    throw Error(ErrorKind::InvalidParameter, "expected a rational, got " + j.dump());
}

SolutionRecord record_from_json(const json& j) {
    try {
        SolutionRecord r;
        r.n = j.at("n").get<long>();
        r.x = mpz_from_json(j.at("x"));
        r.y = mpz_from_json(j.at("y"));
        r.value = mpz_from_json(j.at("value"));
        r.primitive = j.at("primitive").get<bool>();
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidParameter, e.what());
    }
}

FamilyFile parse_family_file(const json& j) {
    if (!j.is_object()) throw Error(ErrorKind::InvalidParameter, "family file must be a JSON object");
    if (j.contains("schema") && j["schema"] != kSchemaVersion) {
        throw Error(ErrorKind::InvalidParameter, "unsupported schema " + j["schema"].dump());
    }
    const bool d = j.contains("D"), f = j.contains("form");
    if (d == f) throw Error(ErrorKind::InvalidParameter, "family file needs exactly one of \"D\" or \"form\"");
    if (d && !j["D"].is_number_integer()) throw Error(ErrorKind::InvalidParameter, "\"D\" must be an integer");
    if (f) {
        if (!j["form"].is_array() || j["form"].size() != 4) {
            throw Error(ErrorKind::InvalidParameter, "\"form\" needs four coefficients");
        }
        if (!j.contains("epsilon") || !j["epsilon"].is_array() || j["epsilon"].size() != 3) {
            throw Error(ErrorKind::InvalidParameter, "\"epsilon\" needs three coordinates");
        }
        for (const json& c : j["form"]) mpz_from_json(c);
        for (const json& c : j["epsilon"]) mpq_from_json(c);
    }
    FamilyFile out;
    out.source = j;
    if (j.contains("forms")) {
        if (!j["forms"].is_object()) throw Error(ErrorKind::InvalidParameter, "\"forms\" must be an object");
        for (const auto& [key, val] : j["forms"].items()) {
            long n = 0;
            std::istringstream is(key);
            if (!(is >> n) || !is.eof() || !val.is_string()) {
                throw Error(ErrorKind::InvalidParameter, "bad recorded form for key " + key);
            }
            out.recorded_forms[n] = val.get<std::string>();
        }
    }
    return out;
}

FormFamily build_family(const FamilyFile& f) {
    const json& j = f.source;
    if (j.contains("D")) return example_family(j["D"].get<long>());
    BinaryCubicForm F;
    for (int i = 0; i < 4; ++i) F.a[i] = mpz_from_json(j["form"][i]);
    std::array<mpq_class, 3> e;
    for (int i = 0; i < 3; ++i) e[i] = mpq_from_json(j["epsilon"][i]);
    return family_from_form(F, e);
}

json schema_header(const std::string& command) { return {{"schema", kSchemaVersion}, {"command", command}}; }

}  // namespace thuefam
