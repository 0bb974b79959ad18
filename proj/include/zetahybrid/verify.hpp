#pragma once
// In-process self-check suites: one fast, deterministic batch of invariant
// checks per module.  Meant for smoke-testing an installed build (the CLI
// `verify` subcommand is a thin wrapper); the heavyweight empirical runs
// live in the test binaries, not here.

#include <string>
#include <vector>

namespace zh {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // one line: measured vs expected
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    int failures() const;
    bool all_passed() const { return failures() == 0; }
};

// Suites: "arith", "special", "zeta", "coeffs", "hybrid", "ladder",
// "moments", or "all" (concatenation in that order).  Unknown names throw
// std::invalid_argument listing the valid ones.
SuiteReport run_suite(const std::string& suite);

std::vector<std::string> suite_names();

}  // namespace zh
