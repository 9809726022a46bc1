#pragma once

#include <optional>
#include <vector>

#include "statecast/state_space.hpp"
#include "statecast/time_series.hpp"

namespace statecast::ssm {

/// Prediction step: propagates the belief through the transition and forms
/// the joint Gaussian over (h_t, v_t) given v_{1:t-1}.
/// For EKF models the emission is linearized at the predicted state mean.
Prediction predict(const StateSpaceModel& model, const GaussianBelief& belief);

/// Observation part of the prediction for an arbitrary emission/noise pair.
/// Used both by predict() and by pseudo-observation updates, which observe
/// the same predicted state through a different matrix.
Prediction observe(const Vector& state_mean, const Matrix& state_cov,
                   const Matrix& emission, const Vector& obs_mean,
                   const Matrix& obs_noise);

/// Update step: conditions the prediction on an observation. The covariance
/// is computed in Joseph form and symmetrized; the gain solve is guarded
/// against ill-conditioned innovation covariances (cond > 1e12).
GaussianBelief update(const Prediction& pred, const Vector& observation,
                      int time_index = 0);
GaussianBelief update(const StateSpaceModel& model, const Prediction& pred,
                      const Vector& observation, int time_index = 0);

/// predict + update when an observation is present, predict only otherwise.
GaussianBelief filter_step(const StateSpaceModel& model, const GaussianBelief& belief,
                           const std::optional<Vector>& observation);

/// Left-to-right filtering pass. Output length equals input length.
std::vector<GaussianBelief> filter_sequence(const StateSpaceModel& model,
                                            const GaussianBelief& initial,
                                            const std::vector<std::optional<Vector>>& observations);

/// Convenience overload for scalar series; model must have obs dim 1.
std::vector<GaussianBelief> filter_sequence(const StateSpaceModel& model,
                                            const GaussianBelief& initial,
                                            const dataio::TimeSeries& series);

/// Rauch-Tung-Striebel fixed-interval smoother over a filtered pass.
std::vector<GaussianBelief> rts_smooth(const StateSpaceModel& model,
                                       const std::vector<GaussianBelief>& filtered);

/// Continuous-to-discrete conversion A = exp(A_breve * dt) by Taylor series,
/// truncated when the next term's max-abs entry drops below 1e-14 or after
/// 50 terms, whichever comes first.
Matrix discretize(const Matrix& continuous_transition, double dt);

/// Open-loop multi-step forecast: iterated predictions with no updates,
/// each seeded from the previous predicted state.
std::vector<Prediction> forecast(const StateSpaceModel& model,
                                 const GaussianBelief& belief, int steps);

/// (M + M^T)/2. Kalman recursions accumulate asymmetry over long loops.
Matrix symmetrize(const Matrix& m);

} // namespace statecast::ssm
