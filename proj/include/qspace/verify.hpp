#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qspace {

struct CheckResult {
    std::string name;
    // "min-slack" checks report the smallest slack seen (nonnegative when the
    // inequality holds); "max-error" checks report the largest absolute error.
    std::string kind;
    bool pass = false;
    double worst = 0.0;
    std::size_t trials = 0;

    // How far past its tolerance the check strayed (zero when passing).
    double deviation() const {
        if (kind == "min-slack") return worst < 0.0 ? -worst : 0.0;
        return worst;
    }
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::vector<CheckResult> checks;
    bool pass = false;
};

std::vector<std::string> suite_names();

// trials = 0 selects the suite default; tol = NaN keeps per-check defaults.
// Reports are deterministic functions of (name, seed, trials, tol).
SuiteReport run_suite(const std::string& name, std::uint64_t seed,
                      std::size_t trials, double tol);

}  // namespace qspace
