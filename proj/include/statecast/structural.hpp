#pragma once

#include <string>
#include <vector>

#include "statecast/state_space.hpp"
#include "statecast/time_series.hpp"

namespace statecast::models {

enum class ModelKind { kLinearSeasonal, kNonlinearAmplitude, kDlmFreeform };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/// Configuration for the structural model builders. The angular frequency
/// omega = 2*pi/period is always derived, never stored.
struct StructuralSpec {
    ModelKind model_kind = ModelKind::kLinearSeasonal;
    int period = 96;             // samples per seasonal cycle
    double sample_interval = 1.0;
    std::vector<double> state_noise_diag;  // empty = builder defaults
    double obs_noise = 0.1;

    double omega() const;
};

/// Maps component names onto state-vector positions. Names are a bijection
/// onto 0..n-1.
class LatentLayout {
public:
    explicit LatentLayout(std::vector<std::string> names);

    int dim() const { return static_cast<int>(names_.size()); }
    bool contains(const std::string& name) const;
    int index_of(const std::string& name) const;  // throws on unknown name
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
};

struct BuiltModel {
    ssm::StateSpaceModel model;
    LatentLayout layout;
};

// Component names shared across builders.
inline constexpr const char* kTrend = "trend";
inline constexpr const char* kTrendVelocity = "trend_velocity";
inline constexpr const char* kSeasonal = "seasonal";
inline constexpr const char* kSeasonalVelocity = "seasonal_velocity";
inline constexpr const char* kAmplitude = "amplitude";
inline constexpr const char* kAmplitudeVelocity = "amplitude_velocity";
inline constexpr const char* kHarmonicSin = "harmonic_sin";
inline constexpr const char* kHarmonicCos = "harmonic_cos";

std::string seasonal_factor_name(int j);

/// Local linear trend + harmonic seasonal, observed as their sum.
/// State (trend, trend_velocity, seasonal, seasonal_velocity).
BuiltModel build_linear_seasonal(const StructuralSpec& spec);

/// Trend + latent sinusoid amplitude; the emission trend + amplitude*sin is
/// nonlinear, handled by EKF linearization.
/// State (trend, trend_velocity, amplitude, amplitude_velocity,
///        harmonic_sin, harmonic_cos).
BuiltModel build_nonlinear_amplitude(const StructuralSpec& spec);

/// Free-form seasonal baseline: random-walk level plus one factor per
/// seasonal position, advanced cyclically. State dimension period + 1.
BuiltModel build_dlm_freeform(const StructuralSpec& spec);

BuiltModel build(const StructuralSpec& spec);

/// Selection matrix for pseudo-observations: one row per component, 1 at
/// that component's state index.
ssm::Matrix attractor_emission(const LatentLayout& layout,
                               const std::vector<std::string>& components);

/// Starting belief for filtering a training series: wide diagonal
/// covariance, trend level at the first observed value, harmonic phase and
/// DLM factors fitted from the first cycles of data.
ssm::GaussianBelief initial_belief(const BuiltModel& built, const StructuralSpec& spec,
                                   const dataio::TimeSeries& train);

} // namespace statecast::models
