#include "statecast/metrics.hpp"

#include <cmath>
#include <string>

#include "statecast/errors.hpp"

namespace statecast::eval {

namespace {

void check_inputs(const std::vector<double>& truth, const std::vector<double>& forecast,
                  double y_min, double y_max) {
    if (truth.empty() || truth.size() != forecast.size()) {
        throw ValidationError("nrmse: truth/forecast lengths must match and be >= 1, got " +
                              std::to_string(truth.size()) + " and " +
                              std::to_string(forecast.size()));
    }
    if (!(y_max > y_min)) {
        throw ValidationError("nrmse: dataset range is empty (y_max <= y_min)");
    }
}

} // namespace

double nrmse(const std::vector<double>& truth, const std::vector<double>& forecast,
             double y_min, double y_max) {
    check_inputs(truth, forecast, y_min, y_max);
    double sum_sq = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double err = truth[i] - forecast[i];
        sum_sq += err * err;
    }
    return 100.0 * std::sqrt(sum_sq / static_cast<double>(truth.size())) / (y_max - y_min);
}

std::vector<double> nrmse_per_sample(const std::vector<double>& truth,
                                     const std::vector<double>& forecast, double y_min,
                                     double y_max) {
    check_inputs(truth, forecast, y_min, y_max);
    std::vector<double> out;
    out.reserve(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
        out.push_back(100.0 * std::abs(truth[i] - forecast[i]) / (y_max - y_min));
    }
    return out;
}

} // namespace statecast::eval
