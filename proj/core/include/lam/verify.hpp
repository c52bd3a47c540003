#pragma once

#include <string>
#include <vector>

namespace lam::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail; // short measurement summary, also filled on pass
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

// Available suites: lambda, pratt, sieve, analysis, model, all.
std::vector<std::string> suite_names();

// Runs the named property suite at desk scale (seconds, not minutes).
// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name);

} // namespace lam::verify
