#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

namespace statecast::ssm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Gaussian over the latent state: mean f_t, covariance F_t.
struct GaussianBelief {
    Vector mean;
    Matrix cov;
    int time_index = 0;

    int dim() const { return static_cast<int>(mean.size()); }
};

/// Nonlinear emission b(h) with its Jacobian, linearized per step by the EKF.
struct EmissionFn {
    std::function<Vector(const Vector&)> value;
    std::function<Matrix(const Vector&)> jacobian;
    int obs_dim = 1;
};

/// Discrete-time (extended) linear-Gaussian state-space model
///   h_t = A h_{t-1} + eta_h,   eta_h ~ N(0, state_noise)
///   v_t = B h_t     + eta_v,   eta_v ~ N(0, obs_noise)
/// Either `emission` (linear B) or `emission_fn` (EKF) is set, never both.
/// When the model was built from a continuous-time system, the source matrix
/// is kept in `continuous_transition` so the discretization can be re-derived.
struct StateSpaceModel {
    Matrix transition;                            // A, n x n
    std::optional<Matrix> emission;               // B, m x n
    std::optional<EmissionFn> emission_fn;
    Matrix state_noise;                           // Sigma_h, n x n
    Matrix obs_noise;                             // Sigma_v, m x m
    std::optional<Matrix> continuous_transition;  // A-breve, n x n
    double sample_interval = 1.0;

    int state_dim() const { return static_cast<int>(transition.rows()); }
    int obs_dim() const {
        return emission ? static_cast<int>(emission->rows()) : emission_fn->obs_dim;
    }
    bool is_nonlinear() const { return emission_fn.has_value(); }

    /// Emission value at a state mean: B*h for linear models, b(h) for EKF.
    Vector emit(const Vector& state_mean) const {
        return emission ? Vector(*emission * state_mean) : emission_fn->value(state_mean);
    }

    /// Emission matrix linearized at a state mean (B itself for linear models).
    Matrix emission_at(const Vector& state_mean) const {
        return emission ? *emission : emission_fn->jacobian(state_mean);
    }
};

/// One-step predictive distribution p(h_t, v_t | v_{1:t-1}).
/// `emission_used` and `obs_noise_used` record the matrices the observation
/// part was formed with, so the matching update is self-contained.
struct Prediction {
    Vector state_mean;   // mu_h
    Matrix state_cov;    // Sigma_hh
    Vector obs_mean;     // mu_v
    Matrix obs_cov;      // Sigma_vv
    Matrix cross_cov;    // Sigma_hv, n x m
    Matrix emission_used;
    Matrix obs_noise_used;
};

} // namespace statecast::ssm
