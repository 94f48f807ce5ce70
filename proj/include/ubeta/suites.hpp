#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ubeta/identities.hpp"

namespace ubeta {

struct CaseResult {
    std::string name;
    bool passed = false;
    double metric = 0.0;     ///< worst residual / rel_error over the case's draws
    double threshold = 0.0;
    std::string note;
};

struct SuiteResult {
    std::string suite;
    std::vector<CaseResult> cases;
    double wall_time_ms = 0.0;
    int n_passed() const;
    bool all_passed() const;
};

std::vector<std::string> suite_names();  // functions, identities-1d, identities-2d, rho, all

/// Runs one named battery with a seeded sampler. Deterministic per seed.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, const PrecisionPolicy& policy);

}  // namespace ubeta
