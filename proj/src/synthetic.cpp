#include "statecast/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "statecast/errors.hpp"

namespace statecast::dataio {

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
    if (spec.days < 1) {
        throw ValidationError("synthetic: days must be >= 1, got " + std::to_string(spec.days));
    }
    if (spec.period < 2) {
        throw ValidationError("synthetic: period must be >= 2, got " +
                              std::to_string(spec.period));
    }
    if (spec.obs_noise_sigma < 0 || spec.ou_sigma < 0) {
        throw ValidationError("synthetic: noise levels must be non-negative");
    }
    const std::size_t n = spec.sample_count();
    const std::size_t inflection = spec.resolved_inflection();
    if (spec.trend_kind == TrendKind::kPiecewiseInflection && inflection >= n) {
        throw ValidationError("synthetic: inflection index " + std::to_string(inflection) +
                              " outside series of length " + std::to_string(n));
    }

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double omega = 2.0 * std::numbers::pi / static_cast<double>(spec.period);

    SyntheticData data;
    data.trend.resize(n);
    data.amplitude.resize(n);
    data.seasonal.resize(n);
    data.series.interval_seconds = spec.interval_seconds;
    data.series.timestamps.resize(n);
    data.series.values.resize(n);
    data.series.missing.assign(n, false);

    double ou_state = spec.base_level;
    for (std::size_t k = 0; k < n; ++k) {
        double trend;
        switch (spec.trend_kind) {
        case TrendKind::kOuWander:
            trend = ou_state;
            ou_state += spec.ou_theta * (spec.base_level - ou_state) +
                        spec.ou_sigma * gauss(rng);
            break;
        case TrendKind::kPiecewiseInflection:
            trend = k < inflection
                        ? spec.base_level + spec.trend_slope * static_cast<double>(k)
                        : spec.base_level + spec.trend_slope * static_cast<double>(inflection) -
                              spec.trend_slope * static_cast<double>(k - inflection);
            break;
        }

        double amplitude = spec.amplitude;
        if (spec.amplitude_kind == AmplitudeKind::kSlowVarying) {
            // One full modulation cycle over the whole series.
            amplitude *= 1.0 + spec.amplitude_variation *
                                   std::sin(2.0 * std::numbers::pi * static_cast<double>(k) /
                                            static_cast<double>(n));
        }

        const double seasonal = amplitude * std::sin(omega * static_cast<double>(k) + spec.phase);
        data.trend[k] = trend;
        data.amplitude[k] = amplitude;
        data.seasonal[k] = seasonal;
        data.series.timestamps[k] =
            spec.start_timestamp + static_cast<std::int64_t>(k) * spec.interval_seconds;
        data.series.values[k] = trend + seasonal + spec.obs_noise_sigma * gauss(rng);
    }
    return data;
}

void write_components_csv(const std::string& path, const SyntheticData& data) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    out << "timestamp,trend,amplitude,seasonal\n";
    char buf[128];
    for (std::size_t i = 0; i < data.series.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g",
                      format_timestamp(data.series.timestamps[i]).c_str(), data.trend[i],
                      data.amplitude[i], data.seasonal[i]);
        out << buf << '\n';
    }
    if (!out.good()) {
        throw IoError("write failed for '" + path + "'");
    }
}

} // namespace statecast::dataio
