#include "statecast/protocol.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "statecast/errors.hpp"
#include "statecast/kalman.hpp"
#include "statecast/metrics.hpp"

namespace statecast::eval {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::string> default_components(models::ModelKind kind) {
    if (kind == models::ModelKind::kNonlinearAmplitude) {
        return {models::kTrend, models::kAmplitude};
    }
    return {models::kTrend};
}

int resolve_burn_in(const AttractorSettings& settings, const models::StructuralSpec& spec,
                    std::size_t filtered_len) {
    if (settings.burn_in >= 0) {
        return settings.burn_in;
    }
    const auto period = static_cast<std::size_t>(spec.period);
    return static_cast<int>(std::min(period, filtered_len / 2));
}

} // namespace

std::pair<double, double> dataset_range(const dataio::TimeSeries& series) {
    bool any = false;
    double lo = 0, hi = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.missing[i]) continue;
        if (!any) {
            lo = hi = series.values[i];
            any = true;
        } else {
            lo = std::min(lo, series.values[i]);
            hi = std::max(hi, series.values[i]);
        }
    }
    if (!any) {
        throw ValidationError("dataset_range: series has no observed values");
    }
    return {lo, hi};
}

std::vector<std::size_t> draw_starts(std::uint64_t seed, int count, std::size_t min_start,
                                     std::size_t max_start) {
    if (count < 1) {
        throw ValidationError("draw_starts: count must be >= 1");
    }
    if (max_start < min_start) {
        throw ValidationError("draw_starts: empty start range [" +
                              std::to_string(min_start) + ", " + std::to_string(max_start) +
                              "]");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> dist(min_start, max_start);
    std::set<std::size_t> unique;
    const std::size_t range = max_start - min_start + 1;
    const auto want = static_cast<std::size_t>(count);
    const std::size_t limit = std::min(want, range);
    while (unique.size() < limit) {
        unique.insert(dist(rng));
    }
    std::vector<std::size_t> starts(unique.begin(), unique.end());
    // Range smaller than the requested count: repeat deterministically.
    while (starts.size() < want) {
        starts.push_back(starts[starts.size() % unique.size()]);
    }
    std::sort(starts.begin(), starts.end());
    return starts;
}

ForecastResult run_single_forecast(const ModelVariant& variant,
                                   const dataio::TimeSeries& dataset, std::size_t start,
                                   std::size_t horizon, double y_min, double y_max,
                                   const dataio::TimeSeries* filter_source) {
    if (horizon < 1 || start + horizon > dataset.size()) {
        throw ValidationError("forecast window [" + std::to_string(start) + ", " +
                              std::to_string(start + horizon) + ") outside dataset of length " +
                              std::to_string(dataset.size()));
    }
    if (filter_source && filter_source->size() != dataset.size()) {
        throw ValidationError("filter source length does not match dataset");
    }
    const auto [train, test] =
        dataio::split(filter_source ? *filter_source : dataset, {start, horizon});
    const auto truth_window = dataio::split(dataset, {start, horizon}).second;

    models::BuiltModel built = models::build(variant.spec);
    const ssm::GaussianBelief init = models::initial_belief(built, variant.spec, train);

    ForecastResult result;
    result.latent_names = built.layout.names();

    const auto t0 = Clock::now();
    const auto filtered = ssm::filter_sequence(built.model, init, train);
    const ssm::GaussianBelief& last =
        filtered.empty() ? init : filtered.back();

    std::vector<ssm::Prediction> predictions;
    predictions.reserve(horizon);
    if (variant.reversion) {
        const AttractorSettings& settings = *variant.reversion;
        const auto components = settings.components.empty()
                                    ? default_components(variant.spec.model_kind)
                                    : settings.components;
        const ssm::Matrix selection = models::attractor_emission(built.layout, components);
        const ssm::Matrix pseudo_cov =
            ssm::Matrix::Identity(selection.rows(), selection.rows()) * settings.covariance;
        const auto attractor = meanrev::estimate_attractor(
            filtered, selection, pseudo_cov, settings.weighting, settings.lambda,
            resolve_burn_in(settings, variant.spec, filtered.size()));
        auto steps = meanrev::forecast_with_reversion(built.model, last, attractor,
                                                      static_cast<int>(horizon));
        for (auto& [pred, belief] : steps) {
            predictions.push_back(std::move(pred));
        }
    } else {
        predictions = ssm::forecast(built.model, last, static_cast<int>(horizon));
    }
    result.wall_seconds = seconds_since(t0);

    result.obs_mean.reserve(horizon);
    result.obs_std.reserve(horizon);
    result.latent.reserve(horizon);
    for (const auto& pred : predictions) {
        result.obs_mean.push_back(pred.obs_mean(0));
        result.obs_std.push_back(std::sqrt(std::max(0.0, pred.obs_cov(0, 0))));
        result.latent.emplace_back(pred.state_mean.begin(), pred.state_mean.end());
    }

    // Score against the observed test samples only.
    std::vector<double> truth, forecast;
    truth.reserve(horizon);
    forecast.reserve(horizon);
    for (std::size_t i = 0; i < horizon; ++i) {
        if (truth_window.missing[i]) continue;
        truth.push_back(truth_window.values[i]);
        forecast.push_back(result.obs_mean[i]);
    }
    result.nrmse_total = nrmse(truth, forecast, y_min, y_max);
    result.nrmse_per_sample = nrmse_per_sample(truth, forecast, y_min, y_max);
    return result;
}

ComparisonReport run_protocol(const std::vector<ModelVariant>& variants,
                              const dataio::TimeSeries& dataset,
                              const std::vector<std::size_t>& starts, std::size_t horizon,
                              const std::string& dataset_name) {
    ComparisonReport report;
    report.dataset_name = dataset_name;
    report.horizon = horizon;
    report.starts = starts;
    const auto [y_min, y_max] = dataset_range(dataset);

    for (const auto& variant : variants) {
        ModelReportRow row;
        row.name = variant.name;
        std::vector<double> scores;
        double wall_total = 0;
        for (std::size_t start : starts) {
            ProtocolCell cell;
            cell.start = start;
            try {
                const auto result =
                    run_single_forecast(variant, dataset, start, horizon, y_min, y_max);
                cell.nrmse = result.nrmse_total;
                cell.wall_seconds = result.wall_seconds;
                scores.push_back(result.nrmse_total);
                wall_total += result.wall_seconds;
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
            row.cells.push_back(std::move(cell));
        }
        if (!scores.empty()) {
            double sum = 0;
            for (double s : scores) sum += s;
            row.mean_nrmse = sum / static_cast<double>(scores.size());
            row.box = box_stats(scores);
            row.mean_wall_seconds = wall_total / static_cast<double>(scores.size());
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

BoxStats box_stats(std::vector<double> values) {
    if (values.empty()) {
        throw ValidationError("box_stats: no values");
    }
    std::sort(values.begin(), values.end());
    auto quantile = [&](double p) {
        const double pos = p * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = static_cast<std::size_t>(std::ceil(pos));
        return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
    };
    BoxStats box;
    box.median = quantile(0.5);
    box.q1 = quantile(0.25);
    box.q3 = quantile(0.75);
    const double iqr = box.q3 - box.q1;
    const double lo_fence = box.q1 - 1.5 * iqr;
    const double hi_fence = box.q3 + 1.5 * iqr;
    box.whisker_low = box.q3;
    box.whisker_high = box.q1;
    for (double v : values) {
        if (v >= lo_fence) {
            box.whisker_low = v;
            break;
        }
    }
    for (auto it = values.rbegin(); it != values.rend(); ++it) {
        if (*it <= hi_fence) {
            box.whisker_high = *it;
            break;
        }
    }
    return box;
}

std::string report_to_text(const ComparisonReport& report) {
    std::ostringstream out;
    out << "Average NRMSE (%) over " << report.starts.size() << " forecasts of "
        << report.horizon << " steps\n\n";

    auto cell = [](const std::string& text, int width) {
        std::string s = text;
        if (static_cast<int>(s.size()) < width) {
            s.insert(0, static_cast<std::size_t>(width) - s.size(), ' ');
        }
        return s;
    };
    auto fmt = [](std::optional<double> v) {
        if (!v) return std::string("n/a");
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", *v);
        return std::string(buf);
    };

    int name_width = 8;
    for (const auto& row : report.rows) {
        name_width = std::max(name_width, static_cast<int>(row.name.size()) + 2);
    }
    out << cell("Dataset", 16);
    for (const auto& row : report.rows) {
        out << cell(row.name, name_width);
    }
    out << '\n' << cell(report.dataset_name, 16);
    for (const auto& row : report.rows) {
        out << cell(fmt(row.mean_nrmse), name_width);
    }
    out << "\n\nAverage processing time (s)\n";
    out << cell(report.dataset_name, 16);
    for (const auto& row : report.rows) {
        out << cell(fmt(row.mean_nrmse ? std::optional<double>(row.mean_wall_seconds)
                                       : std::nullopt),
                    name_width);
    }
    out << "\n\nPer-start NRMSE (%)\n";
    for (const auto& row : report.rows) {
        out << cell(row.name, name_width) << ": ";
        for (const auto& c : row.cells) {
            out << cell(c.nrmse ? fmt(*c.nrmse) : "failed", 10);
        }
        out << '\n';
    }
    return out.str();
}

std::string report_to_json(const ComparisonReport& report, bool include_timing) {
    nlohmann::ordered_json doc;
    doc["dataset"] = report.dataset_name;
    doc["horizon"] = report.horizon;
    doc["starts"] = report.starts;
    auto& models = doc["models"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json entry;
        entry["name"] = row.name;
        if (row.mean_nrmse) {
            entry["mean_nrmse"] = *row.mean_nrmse;
        } else {
            entry["mean_nrmse"] = nullptr;
        }
        if (row.box) {
            entry["box"] = {{"median", row.box->median},
                            {"q1", row.box->q1},
                            {"q3", row.box->q3},
                            {"whisker_low", row.box->whisker_low},
                            {"whisker_high", row.box->whisker_high}};
        }
        auto& cells = entry["per_start"] = nlohmann::ordered_json::array();
        for (const auto& c : row.cells) {
            nlohmann::ordered_json jc;
            jc["start"] = c.start;
            if (c.nrmse) {
                jc["nrmse"] = *c.nrmse;
            } else {
                jc["nrmse"] = nullptr;
                jc["error"] = c.error;
            }
            if (include_timing) {
                jc["wall_seconds"] = c.wall_seconds;
            }
            cells.push_back(std::move(jc));
        }
        if (include_timing) {
            entry["mean_wall_seconds"] = row.mean_wall_seconds;
        }
        models.push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

} // namespace statecast::eval
