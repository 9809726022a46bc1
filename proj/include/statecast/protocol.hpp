#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "statecast/meanrev.hpp"
#include "statecast/structural.hpp"
#include "statecast/time_series.hpp"

namespace statecast::eval {

/// Reversion settings for one model variant. An empty component list picks
/// the model's convention: trend for the linear and free-form models, trend
/// plus amplitude for the nonlinear model.
struct AttractorSettings {
    std::vector<std::string> components;
    double covariance = 1.0;  // isotropic pseudo-observation variance
    meanrev::Weighting weighting = meanrev::Weighting::kUniform;
    double lambda = 0.1;
    int burn_in = -1;  // -1 = one seasonal period
};

struct ModelVariant {
    std::string name;
    models::StructuralSpec spec;
    std::optional<AttractorSettings> reversion;
};

/// One evaluated forecast. Observation mean/std come from the per-step
/// predictive distribution; latent rows track the predicted state.
struct ForecastResult {
    std::vector<double> obs_mean;
    std::vector<double> obs_std;
    std::vector<std::string> latent_names;
    std::vector<std::vector<double>> latent;  // [step][component]
    double nrmse_total = 0;
    std::vector<double> nrmse_per_sample;
    double wall_seconds = 0;
};

struct ProtocolCell {
    std::size_t start = 0;
    std::optional<double> nrmse;  // empty = failed cell
    double wall_seconds = 0;
    std::string error;
};

/// Median/quartiles with 1.5*IQR whiskers clamped to the data.
struct BoxStats {
    double median = 0, q1 = 0, q3 = 0, whisker_low = 0, whisker_high = 0;
};

struct ModelReportRow {
    std::string name;
    std::vector<ProtocolCell> cells;
    std::optional<double> mean_nrmse;
    std::optional<BoxStats> box;
    double mean_wall_seconds = 0;
};

struct ComparisonReport {
    std::string dataset_name;
    std::size_t horizon = 0;
    std::vector<std::size_t> starts;
    std::vector<ModelReportRow> rows;
};

/// Observed-value range of the full dataset, used as the NRMSE normalizer.
std::pair<double, double> dataset_range(const dataio::TimeSeries& series);

/// Deterministic forecast start indices in [min_start, max_start], sorted,
/// distinct when the range allows it.
std::vector<std::size_t> draw_starts(std::uint64_t seed, int count, std::size_t min_start,
                                     std::size_t max_start);

/// Filters the training prefix [0, start), builds the attractor when
/// configured, forecasts `horizon` steps and scores them against the
/// dataset values. Wall time covers filtering, attractor construction and
/// forecasting; data handling stays outside the clock.
/// `filter_source`, when given, supplies the training mask (e.g. handheld
/// resampling) over the same grid; evaluation truth always comes from
/// `dataset`, which is never handheld-masked.
ForecastResult run_single_forecast(const ModelVariant& variant,
                                   const dataio::TimeSeries& dataset, std::size_t start,
                                   std::size_t horizon, double y_min, double y_max,
                                   const dataio::TimeSeries* filter_source = nullptr);

/// Full model-comparison protocol over variants x starts. A failing cell is
/// recorded with its error and the protocol continues.
ComparisonReport run_protocol(const std::vector<ModelVariant>& variants,
                              const dataio::TimeSeries& dataset,
                              const std::vector<std::size_t>& starts, std::size_t horizon,
                              const std::string& dataset_name,
                              const dataio::TimeSeries* filter_source = nullptr);

BoxStats box_stats(std::vector<double> values);

/// Aligned-text table: one dataset row, one column per model variant.
std::string report_to_text(const ComparisonReport& report);

/// Machine-readable report. Timing fields are skipped when include_timing
/// is false so reports can be compared across runs.
std::string report_to_json(const ComparisonReport& report, bool include_timing = true);

} // namespace statecast::eval
