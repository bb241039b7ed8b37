#pragma once

#include "hra/report.hpp"

#include <string>

namespace hra {

/// Validated experiment description. `raw` keeps the full config for the
/// report echo; field access revalidates on use with field-level
/// diagnostics.
struct ExperimentConfig {
    std::string kind;  // certify | amplify | universal | proofsys | verify-bounds | timetable
    Json raw;

    static ExperimentConfig parse(const Json& j);
    static ExperimentConfig load(const std::string& path);
};

/// Dispatches to the owning module. Deterministic given the config: all
/// randomness derives from the config's master seed.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace hra
