#pragma once
// The analytic-oracle suite: every integrator checked against an independent
// closed form, special functions against quadrature, and the structural
// trajectory properties on randomized inputs. Runnable from the CLI
// ("selftest" subcommand) and from the test harness.

#include <string>
#include <vector>

namespace bohm {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // measured error / counterexample description
};

// Run every check; each entry is independent (a failure does not stop the
// rest). The suite is deterministic.
std::vector<CheckResult> run_selftest();

}  // namespace bohm
