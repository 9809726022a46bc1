#pragma once

#include <string>

#include "statecast/config.hpp"

namespace statecast::cli {

/// Exit codes reported by the CLI binary.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,     // unexpected
    kBadConfig = 2,   // config/validation problems
    kNumerical = 3,   // singular/ill-conditioned linear algebra
    kIo = 4,          // file access or parse failures
};

/// Maps an in-flight exception to its exit code.
int classify_error(const std::exception& e);

/// Writes the synthetic dataset and its component sidecar into the output
/// directory. Returns a one-line summary.
std::string cmd_synth(const RunConfig& config);

/// Load -> resample (training side) -> split -> filter -> attractor ->
/// forecast. Writes forecast.csv, latent.csv, per_sample_nrmse.csv,
/// report.txt and report.json.
std::string cmd_forecast(const RunConfig& config);

/// Multi-start model comparison; writes report.txt and report.json.
std::string cmd_compare(const RunConfig& config);

} // namespace statecast::cli
