#pragma once

#include <optional>
#include <string>
#include <vector>

#include "statecast/protocol.hpp"
#include "statecast/structural.hpp"
#include "statecast/synthetic.hpp"

namespace statecast::cli {

/// Where the series comes from: a sensor CSV or the synthetic generator.
struct DatasetConfig {
    std::optional<std::string> csv_path;
    dataio::SyntheticSpec synthetic;
    bool use_synthetic = true;
    std::string name = "synthetic";
};

struct ResampleConfig {
    bool enabled = false;
    std::vector<std::string> times = {"05:00", "12:00", "20:30"};
};

struct ModelConfig {
    models::ModelKind kind = models::ModelKind::kLinearSeasonal;
    int period = 96;
    double sample_interval = 1.0;
    double obs_noise = 0.1;
    std::vector<double> linear_state_noise;
    std::vector<double> nonlinear_state_noise;
    std::vector<double> dlm_state_noise;

    models::StructuralSpec spec_for(models::ModelKind which) const;
};

struct AttractorConfig {
    bool enabled = true;
    std::vector<std::string> components;  // empty = model convention
    double covariance = 1.0;
    meanrev::Weighting weighting = meanrev::Weighting::kUniform;
    double lambda = 0.1;
    int burn_in = -1;
};

struct SplitConfig {
    std::size_t index = 0;  // 0 = default two thirds of the series
    std::size_t horizon = 960;
};

struct ProtocolConfig {
    int start_count = 10;
    std::optional<std::uint64_t> seed;  // default: top-level seed
    std::size_t horizon = 960;
    std::size_t min_train = 0;  // 0 = one seasonal period
    std::vector<std::string> variants = {"LDS",  "LDS_MR", "LDS_WMR", "DLM",
                                         "DLM_MR", "DLM_WMR", "EKF",  "EKF_MR"};
};

/// Whole-run configuration. Parsed and validated as a unit; every
/// validation failure names its field path. Flags override file values.
struct RunConfig {
    std::uint64_t seed = 42;
    std::string output_dir = "out";
    DatasetConfig dataset;
    ResampleConfig resample;
    ModelConfig model;
    AttractorConfig attractor;
    SplitConfig split;
    ProtocolConfig protocol;

    std::uint64_t protocol_seed() const { return protocol.seed.value_or(seed); }

    /// Throws ValidationError listing every violated field.
    void validate() const;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);

/// Builds the protocol variant list from the config. Unknown names throw.
std::vector<eval::ModelVariant> make_variants(const RunConfig& config);

} // namespace statecast::cli
