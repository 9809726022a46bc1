#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "statecast/time_series.hpp"

namespace statecast::dataio {

enum class TrendKind { kOuWander, kPiecewiseInflection };
enum class AmplitudeKind { kConstant, kSlowVarying };

/// Stand-in for the pond sensor data: diurnal sinusoid + slow trend + noise.
/// Deterministic under `seed`.
struct SyntheticSpec {
    std::uint64_t seed = 42;
    int days = 45;
    int period = 96;  // samples per day
    TrendKind trend_kind = TrendKind::kPiecewiseInflection;
    AmplitudeKind amplitude_kind = AmplitudeKind::kConstant;

    double base_level = 10.0;
    double amplitude = 1.5;
    double amplitude_variation = 0.3;  // relative swing for slow-varying
    double obs_noise_sigma = 0.3;
    double phase = 0.0;

    // piecewise-inflection: slope per sample, sign flips at the inflection
    // (defaults to 2/3 of the series when unset).
    double trend_slope = 0.002;
    std::optional<std::size_t> inflection_index;

    // ou-wander: discretized mean-reverting walk around base_level.
    double ou_theta = 0.05;
    double ou_sigma = 0.02;

    std::int64_t start_timestamp = 1609459200;  // 2021-01-01T00:00:00 local
    std::int64_t interval_seconds = kDefaultIntervalSeconds;

    std::size_t sample_count() const {
        return static_cast<std::size_t>(days) * static_cast<std::size_t>(period);
    }
    std::size_t resolved_inflection() const {
        return inflection_index.value_or(sample_count() * 2 / 3);
    }
};

/// Observable series plus the latent paths that generated it, enabling
/// component-level scoring.
struct SyntheticData {
    TimeSeries series;
    std::vector<double> trend;
    std::vector<double> amplitude;
    std::vector<double> seasonal;
};

SyntheticData generate_synthetic(const SyntheticSpec& spec);

/// Sidecar with `timestamp,trend,amplitude,seasonal` rows.
void write_components_csv(const std::string& path, const SyntheticData& data);

} // namespace statecast::dataio
