#pragma once

#include <string>

#include "cpwx/montecarlo.hpp"

namespace cpwx {

inline constexpr int kConfigSchemaVersion = 1;

// Parses a run-configuration document (JSON). Unknown keys and missing
// required fields are rejected with ConfigError; values are validated the
// same way as the in-memory spec.
//
// {
//   "schema_version": 1,
//   "experiment": { "replications": N, "master_seed": S,
//                   "methods": ["wilcoxon","cusum"],      (optional, default both)
//                   "histogram_bins": B },                (optional, default 50)
//   "model": { "n": N, "theta": T, "delta": D, "rho": R,
//              "innovation": "normal"|"t1",
//              "mu": M,                                   (optional, default 0)
//              "burn_in": B,                              (optional, default 100)
//              "outliers": { "positions": [...], "factor": F } } (optional)
// }
ExperimentSpec parse_experiment_config(const std::string& json_text);

// Reads the file (IoError on failure) and parses it.
ExperimentSpec load_experiment_config(const std::string& path);

} // namespace cpwx
