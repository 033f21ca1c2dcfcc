#pragma once

// The identity suite behind `thuefam verify`: exact identities of the
// family, the height and modulus relations of the unit, and agreement of the
// pruned solver with the oracle on a small box.

#include <string>
#include <vector>

#include "thuefam/family.hpp"

namespace thuefam {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    /// Adds the 10^4 calibration scan and a larger solver box.
    bool deep = false;
    long n_span = 20;
};

std::vector<CheckResult> verify_family(const FormFamily& fam, const VerifyOptions& opt = {});

/// Compares each recorded "a0 a1 a2 a3" string with F_n.
std::vector<CheckResult> verify_recorded_forms(const FormFamily& fam, const std::vector<std::pair<long, std::string>>& forms);

}  // namespace thuefam
