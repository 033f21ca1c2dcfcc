// thuefam: command-line front end.
//   family  print the forms F_n
//   solve   all 0 < |F_n(x, y)| <= k in a box
//   trace   certificate for one solution
//   verify  identity suite
// Exit codes: 0 ok, 2 usage, 3 precision, 4 not a solution, 5 verification failed.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "thuefam/bounds.hpp"
#include "thuefam/errors.hpp"
#include "thuefam/io.hpp"
#include "thuefam/solver.hpp"
#include "thuefam/tracer.hpp"
#include "thuefam/verify.hpp"

using namespace thuefam;

namespace {

enum Exit { kOk = 0, kUsage = 2, kPrecision = 3, kNotSolution = 4, kVerifyFailed = 5 };

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    double precision = 1e-30;
    long max_precision_bits = 8192;
    BakerConfig baker;
    bool table = false;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Usage("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Usage(path + ": " + e.what());
    }
}

Config load_config(const std::string& path, bool table_flag) {
    Config c;
    if (!path.empty()) {
        const json j = read_json_file(path);
        if (!j.is_object()) throw Usage("config must be a JSON object");
        try {
            for (const auto& [key, val] : j.items()) {
                if (key == "precision") {
                    c.precision = val.get<double>();
                } else if (key == "max_precision_bits") {
                    c.max_precision_bits = val.get<long>();
                } else if (key == "baker") {
                    for (const auto& [bk, bv] : val.items()) {
                        if (bk == "c0") c.baker.c0 = bv.get<double>();
                        else if (bk == "c1") c.baker.c1 = bv.get<double>();
                        else if (bk == "c2") c.baker.c2_default = bv.get<double>();
                        else throw Usage("unknown baker key " + bk);
                    }
                } else if (key == "output") {
                    const std::string o = val.get<std::string>();
                    if (o != "json" && o != "table") throw Usage("output must be json or table");
                    c.table = o == "table";
                } else if (key != "schema") {
                    throw Usage("unknown config key " + key);
                }
            }
        } catch (const json::type_error& e) {
            throw Usage(std::string("config: ") + e.what());
        }
    }
    if (const char* env = std::getenv("THUEFAM_PRECISION")) {
        char* end = nullptr;
        const double p = std::strtod(env, &end);
        if (end == env || *end != '\0') throw Usage("THUEFAM_PRECISION is not a number");
        c.precision = p;
    }
    if (table_flag) c.table = true;
    if (!(c.precision > 0)) throw Usage("precision must be positive");
    if (c.max_precision_bits < static_cast<long>(bits_for(c.precision))) {
        throw Usage("max_precision_bits is below the initial precision");
    }
    try {
        c.baker.validate();
    } catch (const Error& e) {
        throw Usage(e.what());
    }
    return c;
}

std::pair<long, long> parse_range(const std::string& s) {
    static const std::regex re(R"(^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw Usage("bad range '" + s + "', expected a or a..b");
    const long a = std::stol(m[1]);
    const long b = m[2].matched ? std::stol(m[2]) : a;
    if (a > b) throw Usage("empty range " + s);
    return {a, b};
}

mpz_class parse_int(const std::string& s, const char* what) {
    mpz_class z;
    if (s.empty() || z.set_str(s, 10) != 0) throw Usage(std::string("bad integer for ") + what + ": " + s);
    return z;
}

struct FamilyArgs {
    std::optional<long> D;
    std::string file;

    void add(CLI::App* sub) {
        sub->add_option("--D", D, "parameter of the example family");
        sub->add_option("--family", file, "family file (JSON)");
    }

    FamilyFile source() const {
        if (D && !file.empty()) throw Usage("give either --D or --family");
        if (!file.empty()) {
            try {
                return parse_family_file(read_json_file(file));
            } catch (const Error& e) {
                throw Usage(file + ": " + e.what());
            }
        }
        return parse_family_file(json{{"D", D.value_or(1)}});
    }

    FormFamily build() const { return build_family(source()); }
};

void emit(const json& j) { std::cout << j.dump() << '\n'; }

// ---- family ----

int cmd_family(const Config& cfg, const FamilyArgs& fa, const std::string& range) {
    const auto [lo, hi] = parse_range(range);
    const FormFamily fam = fa.build();
    if (!cfg.table) {
        json h = schema_header("family");
        h["family"] = family_to_json(fam);
        emit(h);
    }
    for (long n = lo; n <= hi; ++n) {
        const BinaryCubicForm F = fam.form_at(n);
        if (cfg.table) {
            std::cout << "F_" << n << " = " << F.to_string() << (fam.is_degenerate(n) ? "  (cube)" : "") << '\n';
        } else {
            emit({{"n", n}, {"form", F.to_string()}, {"coefficients", to_json(F)}, {"degenerate", fam.is_degenerate(n)}});
        }
    }
    return kOk;
}

// ---- solve ----

struct SolveArgs {
    std::string k = "1";
    std::string range = "-8..8";
    long y_max = 1000;
    bool oracle = false;
    bool trivial = false;
    bool degenerate = false;
    bool decompose = false;
    bool stats = false;
};

int cmd_solve(const Config& cfg, const FamilyArgs& fa, const SolveArgs& a) {
    SearchSpec s;
    s.k = parse_int(a.k, "--k");
    std::tie(s.n_lo, s.n_hi) = parse_range(a.range);
    s.y_max = a.y_max;
    s.exclude_trivial = !a.trivial;
    s.exclude_degenerate = !a.degenerate;
    s.validate();
    const FormFamily fam = fa.build();
    SolveStats st;
    std::vector<SolutionRecord> sols = a.oracle ? brute_force_oracle(fam, s) : solve_box(fam, s, 64, &st);
    if (a.decompose) attach_decompositions(fam, sols, cfg.precision);
    if (cfg.table) {
        std::cout << "n\tx\ty\tF_n(x,y)\n";
        for (const auto& r : sols) std::cout << r.n << '\t' << r.x << '\t' << r.y << '\t' << r.value << '\n';
    } else {
        json h = schema_header("solve");
        h["family"] = family_to_json(fam);
        h["k"] = s.k.get_str();
        h["n_range"] = {s.n_lo, s.n_hi};
        h["y_max"] = s.y_max;
        h["path"] = a.oracle ? "oracle" : "pruned";
        emit(h);
        for (const auto& r : sols) emit(to_json(r));
    }
    if (a.stats) {
        std::cerr << "solutions " << sols.size();
        if (!a.oracle) {
            std::cerr << ", stripes " << st.stripes << ", pruned " << st.pruned << ", fallback " << st.fallback
                      << ", evaluations " << st.evaluations;
        }
        std::cerr << '\n';
    }
    return kOk;
}

// ---- trace ----

struct TraceArgs {
    long n = 0;
    std::string x, y, k;
};

int cmd_trace(const Config& cfg, const FamilyArgs& fa, const TraceArgs& a) {
    std::optional<FormFamily> built;
    try {
        built.emplace(fa.build());
    } catch (const Error& e) {
        throw Usage(e.what());
    }
    const FormFamily& fam = *built;
    const mpz_class x = parse_int(a.x, "--x"), y = parse_int(a.y, "--y");
    std::optional<mpz_class> k;
    if (!a.k.empty()) k = parse_int(a.k, "--k");
    // inputs that are not solutions
    if (x == 0 || y == 0) throw Error(ErrorKind::TrivialXY, "xy = 0");
    if (fam.is_degenerate(a.n)) throw Error(ErrorKind::DegenerateN, "eps^n alpha is rational for n = " + std::to_string(a.n));
    const mpz_class v = fam.form_at(a.n)(x, y);
    if (v == 0) throw Error(ErrorKind::ZeroValue, "F_n(x, y) = 0");
    if (!k) k = abs(v);
    if (*k < 1 || abs(v) > *k) {
        throw Error(ErrorKind::InvalidParameter, "|F_n(x, y)| = " + mpz_class(abs(v)).get_str() + " exceeds k");
    }
    TraceConfig tc;
    tc.eps = cfg.precision;
    tc.max_bits = cfg.max_precision_bits;
    const SolutionTrace st = trace_solution(fam, a.n, x, y, *k, tc);

    json cert = to_json(st);
    cert["n"] = a.n;
    cert["family"] = family_to_json(fam);
    cert["sine_bound"] = {{"c2", to_json(cfg.baker.c2_default)}, {"value", to_json(sine_bound(a.n, cfg.baker.c2_default))}};
    if (st.lambda) cert["three_log_bound"] = to_json(prop1_third_case(cfg.baker, fam, a.n, *k, st.reduction, *st.lambda));
    cert["config"] = {{"precision", to_json(cfg.precision)},
                      {"max_precision_bits", cfg.max_precision_bits},
                      {"baker", {{"c0", to_json(cfg.baker.c0)}, {"c1", to_json(cfg.baker.c1)}, {"c2", to_json(cfg.baker.c2_default)}}}};
    if (cfg.table) {
        std::cout << "solution n=" << a.n << " x=" << x << " y=" << y << " F=" << st.reduction.value << " k=" << *k
                  << '\n';
        std::cout << "ell=" << st.reduction.dec.ell << " case=" << (cert["case"].is_null() ? "ambiguous" : cert["case"].get<std::string>())
                  << " bits=" << st.trace.bits << '\n';
        for (const LedgerRow& r : st.ledger) {
            std::cout << "  [" << r.id << "] " << (!r.applicable ? "n/a" : !r.holds ? "info" : *r.holds ? "holds" : "FAILS")
                      << "  " << r.statement << '\n';
        }
        if (st.lambda) std::cout << "Lambda=" << st.lambda->Lambda.im.to_string(12) << "i h=" << st.lambda->h << '\n';
    } else {
        emit(schema_header("trace"));
        emit(cert);
    }
    return kOk;
}

// ---- verify ----

int cmd_verify(const Config& cfg, const std::vector<long>& Ds, const std::string& file, bool deep) {
    VerifyOptions opt;
    opt.deep = deep;
    std::vector<std::pair<std::string, std::vector<CheckResult>>> runs;
    if (!file.empty()) {
        FamilyFile ff;
        try {
            ff = parse_family_file(read_json_file(file));
        } catch (const Error& e) {
            throw Usage(file + ": " + e.what());
        }
        std::vector<CheckResult> res;
        try {
            const FormFamily fam = build_family(ff);
            std::vector<std::pair<long, std::string>> rec(ff.recorded_forms.begin(), ff.recorded_forms.end());
            res = verify_recorded_forms(fam, rec);
            for (CheckResult& c : verify_family(fam, opt)) res.push_back(std::move(c));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::PrecisionExhausted) throw;
            res.push_back({"family data defines a family", false, e.what()});
        }
        runs.emplace_back(file, std::move(res));
    } else {
        for (long D : Ds) runs.emplace_back("D=" + std::to_string(D), verify_family(example_family(D), opt));
    }
    if (!cfg.table) emit(schema_header("verify"));
    std::optional<std::string> first_fail;
    long total = 0, passed = 0;
    for (const auto& [label, res] : runs) {
        for (const CheckResult& c : res) {
            ++total;
            if (c.passed) ++passed;
            else if (!first_fail) first_fail = label + ": " + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
            if (cfg.table) {
                std::cout << (c.passed ? "PASS " : "FAIL ") << label << "  " << c.name;
                if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
                std::cout << '\n';
            } else {
                emit({{"family", label}, {"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            }
        }
    }
    if (cfg.table) std::cout << passed << "/" << total << " checks passed\n";
    else emit({{"summary", {{"passed", passed}, {"total", total}, {"ok", !first_fail}}}});
    if (first_fail) {
        std::cerr << "first failing identity: " << *first_fail << '\n';
        return kVerifyFailed;
    }
    return kOk;
}

int exit_for(const Error& e, bool trace) {
    switch (e.kind()) {
    case ErrorKind::PrecisionExhausted: return kPrecision;
    case ErrorKind::TrivialXY:
    case ErrorKind::DegenerateN:
    case ErrorKind::ZeroValue: return trace ? kNotSolution : kUsage;
    case ErrorKind::InvalidParameter: return trace ? kNotSolution : kUsage;
    default: return kUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thue inequalities for parametrised families of cubic forms"};
    app.require_subcommand(1);
    std::string config_path;
    bool table = false;
    app.add_option("--config", config_path, "config file (JSON)");
    app.add_flag("--table", table, "human-readable output instead of JSON lines");

    FamilyArgs fam_family, fam_solve, fam_trace;
    std::string family_range = "-2..2";
    auto* family = app.add_subcommand("family", "print the forms F_n");
    fam_family.add(family);
    family->add_option("--n", family_range, "n or a..b");

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "solve 0 < |F_n(x, y)| <= k");
    fam_solve.add(solve);
    solve->add_option("--k", sa.k, "bound k >= 0")->required();
    solve->add_option("--n", sa.range, "n or a..b");
    solve->add_option("--y-max", sa.y_max, "bound on |y|");
    solve->add_flag("--oracle", sa.oracle, "unpruned exact search");
    solve->add_flag("--include-trivial", sa.trivial, "keep solutions with xy = 0");
    solve->add_flag("--include-degenerate", sa.degenerate, "keep n with eps^n alpha rational");
    solve->add_flag("--decompose", sa.decompose, "attach the unit decomposition to each record");
    solve->add_flag("--stats", sa.stats, "search statistics on stderr");

    TraceArgs ta;
    auto* trace = app.add_subcommand("trace", "certificate for one solution");
    fam_trace.add(trace);
    trace->add_option("--n", ta.n)->required();
    trace->add_option("--x", ta.x)->required();
    trace->add_option("--y", ta.y)->required();
    trace->add_option("--k", ta.k, "defaults to |F_n(x, y)|");

    std::vector<long> verify_D{1, 2, 3};
    std::string verify_file;
    bool deep = false;
    auto* verify = app.add_subcommand("verify", "run the identity suite");
    verify->add_option("--D", verify_D, "comma-separated parameters")->delimiter(',');
    verify->add_option("--family", verify_file, "family file (JSON)");
    verify->add_flag("--deep", deep, "add the 10^4 calibration scan");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    const bool in_trace = trace->parsed();
    try {
        const Config cfg = load_config(config_path, table);
        if (family->parsed()) return cmd_family(cfg, fam_family, family_range);
        if (solve->parsed()) return cmd_solve(cfg, fam_solve, sa);
        if (trace->parsed()) return cmd_trace(cfg, fam_trace, ta);
        if (verify->parsed()) return cmd_verify(cfg, verify_D, verify_file, deep);
    } catch (const Usage& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_for(e, in_trace);
    }
    return kUsage;
}
