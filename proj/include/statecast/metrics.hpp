#pragma once

#include <vector>

namespace statecast::eval {

/// Total normalized RMSE in percent: 100 * RMSE / (y_max - y_min). The
/// normalization constants come from the full dataset range, not the
/// evaluation window.
double nrmse(const std::vector<double>& truth, const std::vector<double>& forecast,
             double y_min, double y_max);

/// Per-sample variant: 100 * |y_i - yhat_i| / (y_max - y_min). The RMS of
/// this vector equals the total nrmse.
std::vector<double> nrmse_per_sample(const std::vector<double>& truth,
                                     const std::vector<double>& forecast, double y_min,
                                     double y_max);

} // namespace statecast::eval
