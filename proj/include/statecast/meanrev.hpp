#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "statecast/state_space.hpp"

namespace statecast::meanrev {

using ssm::GaussianBelief;
using ssm::Matrix;
using ssm::Prediction;
using ssm::Vector;

enum class Weighting { kUniform, kExponential };

/// Fixed Gaussian summary of previously observed dynamics. Its mean is the
/// pseudo-observation injected at every forecast step; the pseudo-observation
/// covariance sets the pull strength (small = fast settling, large = the
/// attractor is effectively ignored).
struct AttractorDistribution {
    Vector mean;            // f_inf restricted to the selected components
    Matrix emission;        // selection rows over the state vector
    Matrix pseudo_obs_cov;  // PSD, one row/col per selected component
    Weighting weighting = Weighting::kUniform;
    double lambda = 0.1;    // exponential decay, 0 < lambda <= 1
    int burn_in = 0;        // leading filtered samples excluded from the mean

    void validate(int state_dim) const;
};

/// Component-wise arithmetic mean of selection * f_i over i >= burn_in.
Vector attractor_mean(const std::vector<GaussianBelief>& filtered,
                      const Matrix& selection, int burn_in);

/// Self-normalizing exponential weighted mean over the post-burn-in window:
///   sum_i f_i (1-lambda)^(t-i) / sum_i (1-lambda)^(t-i).
Vector weighted_attractor_mean(const std::vector<GaussianBelief>& filtered,
                               const Matrix& selection, double lambda, int burn_in);

/// Unnormalized approximation lambda * sum_i f_i (1-lambda)^(t-i). Only
/// close to the weighted mean when lambda*t is large enough for the weights
/// to sum to ~1; prefer weighted_attractor_mean.
Vector weighted_attractor_mean_unnormalized(const std::vector<GaussianBelief>& filtered,
                                            const Matrix& selection, double lambda,
                                            int burn_in);

/// Builds the attractor over a filtered training pass.
AttractorDistribution estimate_attractor(const std::vector<GaussianBelief>& filtered,
                                         const Matrix& selection,
                                         const Matrix& pseudo_obs_cov,
                                         Weighting weighting, double lambda, int burn_in);

/// Mean-reverting forecast: each step predicts under the model, records that
/// prediction, then conditions the state on the pseudo-observation
/// v = attractor mean through the attractor's emission. The filtered belief
/// seeds the next step; the recorded per-step Prediction (pre-update) is the
/// reported forecast trajectory.
std::vector<std::pair<Prediction, GaussianBelief>> forecast_with_reversion(
    const ssm::StateSpaceModel& model, const GaussianBelief& belief,
    const AttractorDistribution& attractor, int steps);

/// Distance-to-attractor instrumentation for tuning the pseudo-observation
/// covariance.
struct SettlingReport {
    double initial_distance = 0;       // at the starting belief
    std::vector<double> distances;     // after each step's pseudo-update
    std::optional<int> settling_step;  // first step within 5% of initial
};

SettlingReport reversion_settling_report(const ssm::StateSpaceModel& model,
                                         const GaussianBelief& belief,
                                         const AttractorDistribution& attractor,
                                         int steps);

} // namespace statecast::meanrev
