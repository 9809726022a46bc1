#include "statecast/structural.hpp"

#include <cmath>
#include <numbers>

#include "statecast/errors.hpp"
#include "statecast/kalman.hpp"

namespace statecast::models {

using ssm::Matrix;
using ssm::Vector;

namespace {

constexpr double kInitialCovDiag = 1e2;
constexpr double kDefaultVelocityNoise = 1e-6;
constexpr double kDefaultLevelNoise = 1e-4;
constexpr double kDefaultFactorNoise = 1e-7;

void validate_spec(const StructuralSpec& spec, ModelKind expected, int state_dim) {
    std::string problems;
    if (spec.model_kind != expected) {
        problems += "model_kind: expected " + to_string(expected) + ", got " +
                    to_string(spec.model_kind) + "; ";
    }
    if (spec.period < 2) {
        problems += "period: must be >= 2, got " + std::to_string(spec.period) + "; ";
    }
    if (spec.sample_interval <= 0) {
        problems += "sample_interval: must be positive; ";
    }
    if (spec.obs_noise < 0) {
        problems += "obs_noise: must be >= 0; ";
    }
    if (!spec.state_noise_diag.empty() &&
        spec.state_noise_diag.size() != static_cast<std::size_t>(state_dim)) {
        problems += "state_noise_diag: expected " + std::to_string(state_dim) +
                    " entries or none, got " + std::to_string(spec.state_noise_diag.size()) +
                    "; ";
    }
    for (double q : spec.state_noise_diag) {
        if (q < 0) {
            problems += "state_noise_diag: entries must be >= 0; ";
            break;
        }
    }
    if (!problems.empty()) {
        throw ValidationError("invalid structural spec: " + problems);
    }
}

Matrix noise_from_diag(const std::vector<double>& diag) {
    Matrix q = Matrix::Zero(static_cast<long>(diag.size()), static_cast<long>(diag.size()));
    for (std::size_t i = 0; i < diag.size(); ++i) {
        q(static_cast<long>(i), static_cast<long>(i)) = diag[i];
    }
    return q;
}

std::vector<double> resolve_noise(const StructuralSpec& spec, std::vector<double> defaults) {
    return spec.state_noise_diag.empty() ? std::move(defaults) : spec.state_noise_diag;
}

/// Least-squares fit of y ~ mean + cs*sin(omega k) + cc*cos(omega k) over the
/// observed samples of the first seasonal cycle.
struct HarmonicFit {
    double cs = 0;
    double cc = 0;
    bool ok = false;
};

HarmonicFit fit_first_cycle(const dataio::TimeSeries& train, int period, double omega) {
    std::vector<std::pair<int, double>> points;
    for (std::size_t k = 0; k < train.size() && k < static_cast<std::size_t>(period); ++k) {
        if (!train.missing[k]) {
            points.emplace_back(static_cast<int>(k), train.values[k]);
        }
    }
    HarmonicFit fit;
    if (points.size() < 3) {
        return fit;
    }
    double mean = 0;
    for (auto& [k, y] : points) mean += y;
    mean /= static_cast<double>(points.size());

    Matrix design(points.size(), 2);
    Vector target(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        design(static_cast<long>(i), 0) = std::sin(omega * points[i].first);
        design(static_cast<long>(i), 1) = std::cos(omega * points[i].first);
        target(static_cast<long>(i)) = points[i].second - mean;
    }
    Vector coeffs = design.colPivHouseholderQr().solve(target);
    fit.cs = coeffs(0);
    fit.cc = coeffs(1);
    fit.ok = true;
    return fit;
}

double first_observed(const dataio::TimeSeries& train) {
    for (std::size_t k = 0; k < train.size(); ++k) {
        if (!train.missing[k]) return train.values[k];
    }
    return 0.0;
}

} // namespace

std::string to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::kLinearSeasonal: return "linear-seasonal";
    case ModelKind::kNonlinearAmplitude: return "nonlinear-amplitude";
    case ModelKind::kDlmFreeform: return "dlm-freeform";
    }
    return "unknown";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "linear-seasonal" || name == "linear") return ModelKind::kLinearSeasonal;
    if (name == "nonlinear-amplitude" || name == "nonlinear") return ModelKind::kNonlinearAmplitude;
    if (name == "dlm-freeform" || name == "dlm") return ModelKind::kDlmFreeform;
    throw ValidationError("unknown model kind: '" + name + "'");
}

double StructuralSpec::omega() const {
    return 2.0 * std::numbers::pi / static_cast<double>(period);
}

LatentLayout::LatentLayout(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        for (std::size_t j = i + 1; j < names_.size(); ++j) {
            if (names_[i] == names_[j]) {
                throw ValidationError("latent layout has duplicate component '" + names_[i] +
                                      "'");
            }
        }
    }
}

bool LatentLayout::contains(const std::string& name) const {
    for (const auto& n : names_) {
        if (n == name) return true;
    }
    return false;
}

int LatentLayout::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return static_cast<int>(i);
    }
    throw ValidationError("unknown latent component '" + name + "'");
}

std::string seasonal_factor_name(int j) {
    return "seasonal_factor_" + std::to_string(j);
}

BuiltModel build_linear_seasonal(const StructuralSpec& spec) {
    validate_spec(spec, ModelKind::kLinearSeasonal, 4);
    const double w = spec.omega();

    Matrix cont = Matrix::Zero(4, 4);
    cont(0, 1) = 1.0;
    cont(2, 3) = 1.0;
    cont(3, 2) = -w * w;  // oscillatory harmonic block

    ssm::StateSpaceModel model;
    model.continuous_transition = cont;
    model.sample_interval = spec.sample_interval;
    model.transition = ssm::discretize(cont, spec.sample_interval);
    model.emission = (Matrix(1, 4) << 1, 0, 1, 0).finished();
    model.state_noise = noise_from_diag(
        resolve_noise(spec, {0.0, kDefaultVelocityNoise, 0.0, 0.0}));
    model.obs_noise = Matrix::Constant(1, 1, spec.obs_noise);

    LatentLayout layout({kTrend, kTrendVelocity, kSeasonal, kSeasonalVelocity});
    return {std::move(model), std::move(layout)};
}

BuiltModel build_nonlinear_amplitude(const StructuralSpec& spec) {
    validate_spec(spec, ModelKind::kNonlinearAmplitude, 6);
    const double w = spec.omega();

    Matrix cont = Matrix::Zero(6, 6);
    cont(0, 1) = 1.0;  // trend velocity
    cont(2, 3) = 1.0;  // amplitude velocity
    cont(4, 5) = 1.0;  // harmonic oscillator
    cont(5, 4) = -w * w;

    ssm::StateSpaceModel model;
    model.continuous_transition = cont;
    model.sample_interval = spec.sample_interval;
    model.transition = ssm::discretize(cont, spec.sample_interval);

    ssm::EmissionFn emission;
    emission.obs_dim = 1;
    emission.value = [](const Vector& h) {
        return Vector::Constant(1, h(0) + h(2) * h(4));
    };
    emission.jacobian = [](const Vector& h) {
        Matrix jac = Matrix::Zero(1, 6);
        jac(0, 0) = 1.0;
        jac(0, 2) = h(4);
        jac(0, 4) = h(2);
        return jac;
    };
    model.emission_fn = std::move(emission);

    model.state_noise = noise_from_diag(resolve_noise(
        spec, {0.0, kDefaultVelocityNoise, 0.0, kDefaultVelocityNoise, 0.0, 0.0}));
    model.obs_noise = Matrix::Constant(1, 1, spec.obs_noise);

    LatentLayout layout({kTrend, kTrendVelocity, kAmplitude, kAmplitudeVelocity,
                         kHarmonicSin, kHarmonicCos});
    return {std::move(model), std::move(layout)};
}

BuiltModel build_dlm_freeform(const StructuralSpec& spec) {
    validate_spec(spec, ModelKind::kDlmFreeform,
                  spec.period >= 2 ? spec.period + 1 : 1);
    const int p = spec.period;
    const int n = p + 1;

    Matrix transition = Matrix::Zero(n, n);
    transition(0, 0) = 1.0;  // random-walk level
    for (int i = 0; i < p; ++i) {
        transition(1 + i, 1 + (i + 1) % p) = 1.0;  // cyclic factor advance
    }

    ssm::StateSpaceModel model;
    model.sample_interval = spec.sample_interval;
    model.transition = std::move(transition);
    Matrix emission = Matrix::Zero(1, n);
    emission(0, 0) = 1.0;
    emission(0, 1) = 1.0;  // level + current factor
    model.emission = std::move(emission);

    std::vector<double> defaults(static_cast<std::size_t>(n), kDefaultFactorNoise);
    defaults[0] = kDefaultLevelNoise;
    model.state_noise = noise_from_diag(resolve_noise(spec, std::move(defaults)));
    model.obs_noise = Matrix::Constant(1, 1, spec.obs_noise);

    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    names.emplace_back(kTrend);
    for (int j = 0; j < p; ++j) {
        names.push_back(seasonal_factor_name(j));
    }
    return {std::move(model), LatentLayout(std::move(names))};
}

BuiltModel build(const StructuralSpec& spec) {
    switch (spec.model_kind) {
    case ModelKind::kLinearSeasonal: return build_linear_seasonal(spec);
    case ModelKind::kNonlinearAmplitude: return build_nonlinear_amplitude(spec);
    case ModelKind::kDlmFreeform: return build_dlm_freeform(spec);
    }
    throw ValidationError("unknown model kind");
}

ssm::Matrix attractor_emission(const LatentLayout& layout,
                               const std::vector<std::string>& components) {
    if (components.empty()) {
        throw ValidationError("attractor emission needs at least one component");
    }
    Matrix emission = Matrix::Zero(static_cast<long>(components.size()), layout.dim());
    for (std::size_t r = 0; r < components.size(); ++r) {
        emission(static_cast<long>(r), layout.index_of(components[r])) = 1.0;
    }
    return emission;
}

ssm::GaussianBelief initial_belief(const BuiltModel& built, const StructuralSpec& spec,
                                   const dataio::TimeSeries& train) {
    const int n = built.model.state_dim();
    ssm::GaussianBelief belief;
    belief.mean = Vector::Zero(n);
    belief.cov = Matrix::Identity(n, n) * kInitialCovDiag;
    belief.time_index = -1;

    const double level = first_observed(train);
    belief.mean(built.layout.index_of(kTrend)) = level;

    const double w = spec.omega();
    switch (spec.model_kind) {
    case ModelKind::kLinearSeasonal: {
        const HarmonicFit fit = fit_first_cycle(train, spec.period, w);
        if (fit.ok) {
            // Belief sits one step before the first sample: evaluate at t=-1.
            belief.mean(built.layout.index_of(kSeasonal)) =
                fit.cs * std::sin(-w) + fit.cc * std::cos(-w);
            belief.mean(built.layout.index_of(kSeasonalVelocity)) =
                w * (fit.cs * std::cos(-w) - fit.cc * std::sin(-w));
        }
        break;
    }
    case ModelKind::kNonlinearAmplitude: {
        const HarmonicFit fit = fit_first_cycle(train, spec.period, w);
        double amp = fit.ok ? std::hypot(fit.cs, fit.cc) : 0.0;
        double phase = amp > 1e-12 ? std::atan2(fit.cc, fit.cs) : 0.0;
        belief.mean(built.layout.index_of(kAmplitude)) = amp;
        // Harmonic pair carries sin(w t + phase) and its time derivative.
        belief.mean(built.layout.index_of(kHarmonicSin)) = std::sin(-w + phase);
        belief.mean(built.layout.index_of(kHarmonicCos)) = w * std::cos(-w + phase);
        break;
    }
    case ModelKind::kDlmFreeform: {
        // Factors from per-position averages of the detrended training data,
        // centered to sum to zero.
        const int p = spec.period;
        std::vector<double> sums(static_cast<std::size_t>(p), 0.0);
        std::vector<int> counts(static_cast<std::size_t>(p), 0);
        double total = 0;
        int observed = 0;
        for (std::size_t k = 0; k < train.size(); ++k) {
            if (train.missing[k]) continue;
            total += train.values[k];
            ++observed;
        }
        const double mean = observed > 0 ? total / observed : 0.0;
        for (std::size_t k = 0; k < train.size(); ++k) {
            if (train.missing[k]) continue;
            const auto pos = static_cast<std::size_t>(k % static_cast<std::size_t>(p));
            sums[pos] += train.values[k] - mean;
            counts[pos] += 1;
        }
        std::vector<double> factors(static_cast<std::size_t>(p), 0.0);
        double factor_mean = 0;
        for (int j = 0; j < p; ++j) {
            factors[j] = counts[j] > 0 ? sums[j] / counts[j] : 0.0;
            factor_mean += factors[j];
        }
        factor_mean /= p;
        // State is one transition before sample 0: position j lands at
        // factor slot (j + 1) mod p so the first advance exposes factor 0.
        for (int j = 0; j < p; ++j) {
            const int slot = (j + 1) % p;
            belief.mean(1 + slot) = factors[j] - factor_mean;
        }
        break;
    }
    }
    return belief;
}

} // namespace statecast::models
