#include "statecast/kalman.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "statecast/errors.hpp"

namespace statecast::ssm {

namespace {

constexpr double kMaxCondition = 1e12;
constexpr double kSeriesTol = 1e-14;
constexpr int kMaxSeriesTerms = 50;

void check_square(const Matrix& m, const char* name) {
    if (m.rows() != m.cols()) {
        throw DimensionError(std::string(name) + " must be square, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

/// Solves X * S = T for X with S symmetric, i.e. X = T * S^{-1}, rejecting
/// matrices whose eigenvalue spread exceeds the condition guard.
Matrix solve_right_spd(const Matrix& T, const Matrix& S, const char* context) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrize(S));
    if (eig.info() != Eigen::Success) {
        throw NumericalError(std::string(context) + ": eigen decomposition failed");
    }
    const Vector& ev = eig.eigenvalues();
    const double emax = ev.cwiseAbs().maxCoeff();
    const double emin = ev.minCoeff();
    if (emin <= 0.0 || emax / emin > kMaxCondition) {
        throw NumericalError(std::string(context) + ": innovation covariance singular "
                             "or ill-conditioned (min eigenvalue " + std::to_string(emin) +
                             ", max " + std::to_string(emax) + ")");
    }
    // X = T S^{-1} = T V diag(1/lambda) V^T
    return T * eig.eigenvectors() * ev.cwiseInverse().asDiagonal() *
           eig.eigenvectors().transpose();
}

} // namespace

Matrix symmetrize(const Matrix& m) {
    return 0.5 * (m + m.transpose());
}

Prediction observe(const Vector& state_mean, const Matrix& state_cov,
                   const Matrix& emission, const Vector& obs_mean,
                   const Matrix& obs_noise) {
    if (emission.cols() != state_mean.size()) {
        throw DimensionError("emission", emission.rows(), emission.cols(),
                             emission.rows(), state_mean.size());
    }
    if (obs_noise.rows() != emission.rows() || obs_noise.cols() != emission.rows()) {
        throw DimensionError("obs_noise", obs_noise.rows(), obs_noise.cols(),
                             emission.rows(), emission.rows());
    }
    Prediction pred;
    pred.state_mean = state_mean;
    pred.state_cov = state_cov;
    pred.obs_mean = obs_mean;
    pred.obs_cov = symmetrize(emission * state_cov * emission.transpose() + obs_noise);
    pred.cross_cov = state_cov * emission.transpose();
    pred.emission_used = emission;
    pred.obs_noise_used = obs_noise;
    return pred;
}

Prediction predict(const StateSpaceModel& model, const GaussianBelief& belief) {
    const int n = model.state_dim();
    if (belief.mean.size() != n) {
        throw DimensionError("belief.mean", belief.mean.size(), 1, n, 1);
    }
    if (belief.cov.rows() != n || belief.cov.cols() != n) {
        throw DimensionError("belief.cov", belief.cov.rows(), belief.cov.cols(), n, n);
    }
    if (model.state_noise.rows() != n || model.state_noise.cols() != n) {
        throw DimensionError("state_noise", model.state_noise.rows(),
                             model.state_noise.cols(), n, n);
    }

    Vector state_mean = model.transition * belief.mean;
    Matrix state_cov = symmetrize(model.transition * belief.cov * model.transition.transpose() +
                                  model.state_noise);

    // EKF: linearize at the predicted mean, emit through b().
    const Matrix emission = model.emission_at(state_mean);
    const Vector obs_mean = model.emit(state_mean);
    return observe(state_mean, state_cov, emission, obs_mean, model.obs_noise);
}

GaussianBelief update(const Prediction& pred, const Vector& observation, int time_index) {
    const auto m = pred.obs_mean.size();
    if (observation.size() != m) {
        throw DimensionError("observation", observation.size(), 1, m, 1);
    }

    const Matrix gain = solve_right_spd(pred.cross_cov, pred.obs_cov, "update");

    GaussianBelief out;
    out.mean = pred.state_mean + gain * (observation - pred.obs_mean);

    // Joseph form: (I - K B) P (I - K B)^T + K R K^T.
    const auto n = pred.state_mean.size();
    const Matrix ikb = Matrix::Identity(n, n) - gain * pred.emission_used;
    out.cov = symmetrize(ikb * pred.state_cov * ikb.transpose() +
                         gain * pred.obs_noise_used * gain.transpose());
    out.time_index = time_index;
    return out;
}

GaussianBelief update(const StateSpaceModel& model, const Prediction& pred,
                      const Vector& observation, int time_index) {
    if (observation.size() != model.obs_dim()) {
        throw DimensionError("observation", observation.size(), 1, model.obs_dim(), 1);
    }
    return update(pred, observation, time_index);
}

GaussianBelief filter_step(const StateSpaceModel& model, const GaussianBelief& belief,
                           const std::optional<Vector>& observation) {
    Prediction pred = predict(model, belief);
    if (!observation) {
        return GaussianBelief{std::move(pred.state_mean), std::move(pred.state_cov),
                              belief.time_index + 1};
    }
    return update(pred, *observation, belief.time_index + 1);
}

std::vector<GaussianBelief> filter_sequence(const StateSpaceModel& model,
                                            const GaussianBelief& initial,
                                            const std::vector<std::optional<Vector>>& observations) {
    std::vector<GaussianBelief> out;
    out.reserve(observations.size());
    const GaussianBelief* current = &initial;
    for (const auto& obs : observations) {
        out.push_back(filter_step(model, *current, obs));
        current = &out.back();
    }
    return out;
}

std::vector<GaussianBelief> filter_sequence(const StateSpaceModel& model,
                                            const GaussianBelief& initial,
                                            const dataio::TimeSeries& series) {
    if (model.obs_dim() != 1) {
        throw DimensionError("series observation dimension 1 does not match model obs dim " +
                             std::to_string(model.obs_dim()));
    }
    std::vector<std::optional<Vector>> obs;
    obs.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.missing[i]) {
            obs.emplace_back(std::nullopt);
        } else {
            obs.emplace_back(Vector::Constant(1, series.values[i]));
        }
    }
    return filter_sequence(model, initial, obs);
}

std::vector<GaussianBelief> rts_smooth(const StateSpaceModel& model,
                                       const std::vector<GaussianBelief>& filtered) {
    if (filtered.empty()) {
        throw ValidationError("rts_smooth: filtered sequence is empty");
    }
    const Matrix& A = model.transition;
    std::vector<GaussianBelief> smoothed(filtered.size());
    smoothed.back() = filtered.back();
    for (auto t = static_cast<std::ptrdiff_t>(filtered.size()) - 2; t >= 0; --t) {
        const GaussianBelief& f = filtered[t];
        const Vector pred_mean = A * f.mean;
        const Matrix pred_cov = symmetrize(A * f.cov * A.transpose() + model.state_noise);
        // G = F A^T P^{-1}
        const Matrix gain = solve_right_spd(f.cov * A.transpose(), pred_cov, "rts_smooth");
        smoothed[t].mean = f.mean + gain * (smoothed[t + 1].mean - pred_mean);
        smoothed[t].cov = symmetrize(
            f.cov + gain * (smoothed[t + 1].cov - pred_cov) * gain.transpose());
        smoothed[t].time_index = f.time_index;
    }
    return smoothed;
}

Matrix discretize(const Matrix& continuous_transition, double dt) {
    check_square(continuous_transition, "continuous_transition");
    const auto n = continuous_transition.rows();
    const Matrix scaled = continuous_transition * dt;
    Matrix result = Matrix::Identity(n, n);
    Matrix term = Matrix::Identity(n, n);
    for (int k = 1; k <= kMaxSeriesTerms; ++k) {
        term = (term * scaled / static_cast<double>(k)).eval();
        result += term;
        if (term.cwiseAbs().maxCoeff() < kSeriesTol) {
            break;
        }
    }
    return result;
}

std::vector<Prediction> forecast(const StateSpaceModel& model,
                                 const GaussianBelief& belief, int steps) {
    if (steps < 1) {
        throw ValidationError("forecast: steps must be >= 1, got " + std::to_string(steps));
    }
    std::vector<Prediction> out;
    out.reserve(static_cast<std::size_t>(steps));
    GaussianBelief current = belief;
    for (int i = 0; i < steps; ++i) {
        out.push_back(predict(model, current));
        current.mean = out.back().state_mean;
        current.cov = out.back().state_cov;
        current.time_index += 1;
    }
    return out;
}

} // namespace statecast::ssm
