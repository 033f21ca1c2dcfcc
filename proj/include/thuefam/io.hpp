#pragma once

// JSON forms of the library objects. Non-integral quantities are written as
// {"mid": decimal string, "rad": decimal string}, integers as decimal strings
// so that nothing passes through a double.

#include <map>
#include <string>

#include "json.hpp"
#include "thuefam/bounds.hpp"
#include "thuefam/solver.hpp"
#include "thuefam/tracer.hpp"

namespace thuefam {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

json to_json(const Interval& x);
/// A double as a point enclosure.
json to_json(double v);
json to_json(const ComplexBox& z);
json to_json(const FieldElement& x);
json to_json(const BinaryCubicForm& f);
json to_json(const Decomposition& d);
json to_json(const SolutionRecord& r);
json to_json(const SiegelTrace& t);
json to_json(const TermOrder& o);
json to_json(const LedgerRow& r);
json to_json(const LambdaData& l);
json to_json(const ThirdCaseBound& b);
json to_json(const SolutionTrace& t);
/// {"D": D} for example families, the defining data otherwise.
json family_to_json(const FormFamily& fam);

/// Inverse of to_json(SolutionRecord) for the integer fields; the
/// decomposition is not read back.
SolutionRecord record_from_json(const json& j);

/// Integer from a JSON number or decimal string; throws InvalidParameter.
mpz_class mpz_from_json(const json& j);
mpq_class mpq_from_json(const json& j);

/// A family file: {"schema": 1, "D": d} or
/// {"schema": 1, "form": [a0, a1, a2, a3], "epsilon": [e0, e1, e2]}, with an
/// optional "forms": {"n": "a0 a1 a2 a3", ...} of recorded forms to check.
struct FamilyFile {
    json source;
    std::map<long, std::string> recorded_forms;
};

/// Structural parse only; throws InvalidParameter on malformed input.
FamilyFile parse_family_file(const json& j);
/// Builds the family; throws the errors of the FormFamily constructors.
FormFamily build_family(const FamilyFile& f);

/// Header record written as the first line of every JSON-lines output.
json schema_header(const std::string& command);

}  // namespace thuefam
