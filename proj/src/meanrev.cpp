#include "statecast/meanrev.hpp"

#include <cmath>

#include "statecast/errors.hpp"
#include "statecast/kalman.hpp"

namespace statecast::meanrev {

namespace {

constexpr double kSettlingFraction = 0.05;

void check_window(const std::vector<GaussianBelief>& filtered, int burn_in) {
    if (burn_in < 0) {
        throw ValidationError("burn_in must be >= 0, got " + std::to_string(burn_in));
    }
    if (filtered.size() <= static_cast<std::size_t>(burn_in)) {
        throw ValidationError("attractor window is empty: burn_in " +
                              std::to_string(burn_in) + " >= filtered length " +
                              std::to_string(filtered.size()));
    }
}

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || lambda > 1.0) {
        throw ValidationError("lambda must be in (0, 1], got " + std::to_string(lambda));
    }
}

} // namespace

void AttractorDistribution::validate(int state_dim) const {
    if (emission.cols() != state_dim) {
        throw DimensionError("attractor emission", emission.rows(), emission.cols(),
                             emission.rows(), state_dim);
    }
    if (mean.size() != emission.rows()) {
        throw DimensionError("attractor mean", mean.size(), 1, emission.rows(), 1);
    }
    if (pseudo_obs_cov.rows() != emission.rows() ||
        pseudo_obs_cov.cols() != emission.rows()) {
        throw DimensionError("pseudo_obs_cov", pseudo_obs_cov.rows(), pseudo_obs_cov.cols(),
                             emission.rows(), emission.rows());
    }
    if (weighting == Weighting::kExponential) {
        check_lambda(lambda);
    }
}

Vector attractor_mean(const std::vector<GaussianBelief>& filtered,
                      const Matrix& selection, int burn_in) {
    check_window(filtered, burn_in);
    Vector sum = Vector::Zero(selection.rows());
    for (std::size_t i = static_cast<std::size_t>(burn_in); i < filtered.size(); ++i) {
        sum += selection * filtered[i].mean;
    }
    return sum / static_cast<double>(filtered.size() - static_cast<std::size_t>(burn_in));
}

Vector weighted_attractor_mean(const std::vector<GaussianBelief>& filtered,
                               const Matrix& selection, double lambda, int burn_in) {
    check_lambda(lambda);
    check_window(filtered, burn_in);
    const auto last = filtered.size() - 1;
    Vector sum = Vector::Zero(selection.rows());
    double norm = 0.0;
    for (std::size_t i = static_cast<std::size_t>(burn_in); i < filtered.size(); ++i) {
        const double w = std::pow(1.0 - lambda, static_cast<double>(last - i));
        sum += w * (selection * filtered[i].mean);
        norm += w;
    }
    return sum / norm;
}

Vector weighted_attractor_mean_unnormalized(const std::vector<GaussianBelief>& filtered,
                                            const Matrix& selection, double lambda,
                                            int burn_in) {
    check_lambda(lambda);
    check_window(filtered, burn_in);
    const auto last = filtered.size() - 1;
    Vector sum = Vector::Zero(selection.rows());
    for (std::size_t i = static_cast<std::size_t>(burn_in); i < filtered.size(); ++i) {
        sum += std::pow(1.0 - lambda, static_cast<double>(last - i)) *
               (selection * filtered[i].mean);
    }
    return lambda * sum;
}

AttractorDistribution estimate_attractor(const std::vector<GaussianBelief>& filtered,
                                         const Matrix& selection,
                                         const Matrix& pseudo_obs_cov,
                                         Weighting weighting, double lambda, int burn_in) {
    AttractorDistribution attractor;
    attractor.emission = selection;
    attractor.pseudo_obs_cov = pseudo_obs_cov;
    attractor.weighting = weighting;
    attractor.lambda = lambda;
    attractor.burn_in = burn_in;
    attractor.mean = weighting == Weighting::kUniform
                         ? attractor_mean(filtered, selection, burn_in)
                         : weighted_attractor_mean(filtered, selection, lambda, burn_in);
    if (!filtered.empty()) {
        attractor.validate(filtered.front().dim());
    }
    return attractor;
}

std::vector<std::pair<Prediction, GaussianBelief>> forecast_with_reversion(
    const ssm::StateSpaceModel& model, const GaussianBelief& belief,
    const AttractorDistribution& attractor, int steps) {
    if (steps < 1) {
        throw ValidationError("forecast_with_reversion: steps must be >= 1");
    }
    attractor.validate(model.state_dim());

    std::vector<std::pair<Prediction, GaussianBelief>> out;
    out.reserve(static_cast<std::size_t>(steps));
    GaussianBelief current = belief;
    for (int i = 0; i < steps; ++i) {
        Prediction pred = ssm::predict(model, current);
        // Pseudo-observation: see the predicted state through the selection
        // rows and condition on v = f_inf.
        Prediction pseudo = ssm::observe(pred.state_mean, pred.state_cov, attractor.emission,
                                         attractor.emission * pred.state_mean,
                                         attractor.pseudo_obs_cov);
        GaussianBelief updated = ssm::update(pseudo, attractor.mean, current.time_index + 1);
        out.emplace_back(std::move(pred), std::move(updated));
        current = out.back().second;
    }
    return out;
}

SettlingReport reversion_settling_report(const ssm::StateSpaceModel& model,
                                         const GaussianBelief& belief,
                                         const AttractorDistribution& attractor,
                                         int steps) {
    const auto trajectory = forecast_with_reversion(model, belief, attractor, steps);
    SettlingReport report;
    report.initial_distance = (attractor.emission * belief.mean - attractor.mean).norm();
    report.distances.reserve(trajectory.size());
    const double threshold = kSettlingFraction * report.initial_distance;
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        const double d =
            (attractor.emission * trajectory[i].second.mean - attractor.mean).norm();
        report.distances.push_back(d);
        if (!report.settling_step && d <= threshold) {
            report.settling_step = static_cast<int>(i) + 1;
        }
    }
    return report;
}

} // namespace statecast::meanrev
