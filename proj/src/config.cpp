#include "statecast/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "statecast/errors.hpp"

namespace statecast::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError(path + ": " + what);
}

template <typename T>
T get_or(const json& obj, const std::string& key, const std::string& path, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        fail(path + "." + key, "wrong type");
    }
}

dataio::TrendKind trend_kind_from_string(const std::string& name, const std::string& path) {
    if (name == "ou-wander") return dataio::TrendKind::kOuWander;
    if (name == "piecewise-inflection") return dataio::TrendKind::kPiecewiseInflection;
    fail(path, "unknown trend kind '" + name + "'");
}

std::string to_string(dataio::TrendKind kind) {
    return kind == dataio::TrendKind::kOuWander ? "ou-wander" : "piecewise-inflection";
}

dataio::AmplitudeKind amplitude_kind_from_string(const std::string& name,
                                                 const std::string& path) {
    if (name == "constant") return dataio::AmplitudeKind::kConstant;
    if (name == "slow-varying") return dataio::AmplitudeKind::kSlowVarying;
    fail(path, "unknown amplitude kind '" + name + "'");
}

std::string to_string(dataio::AmplitudeKind kind) {
    return kind == dataio::AmplitudeKind::kConstant ? "constant" : "slow-varying";
}

meanrev::Weighting weighting_from_string(const std::string& name, const std::string& path) {
    if (name == "uniform") return meanrev::Weighting::kUniform;
    if (name == "exponential") return meanrev::Weighting::kExponential;
    fail(path, "unknown weighting '" + name + "'");
}

} // namespace

models::StructuralSpec ModelConfig::spec_for(models::ModelKind which) const {
    models::StructuralSpec spec;
    spec.model_kind = which;
    spec.period = period;
    spec.sample_interval = sample_interval;
    spec.obs_noise = obs_noise;
    switch (which) {
    case models::ModelKind::kLinearSeasonal: spec.state_noise_diag = linear_state_noise; break;
    case models::ModelKind::kNonlinearAmplitude:
        spec.state_noise_diag = nonlinear_state_noise;
        break;
    case models::ModelKind::kDlmFreeform: spec.state_noise_diag = dlm_state_noise; break;
    }
    return spec;
}

void RunConfig::validate() const {
    std::string problems;
    auto note = [&](const std::string& field, const std::string& what) {
        problems += field + ": " + what + "; ";
    };

    if (output_dir.empty()) note("output_dir", "must not be empty");
    if (!dataset.use_synthetic && !dataset.csv_path) {
        note("dataset", "needs either a csv path or a synthetic spec");
    }
    if (dataset.use_synthetic) {
        if (dataset.synthetic.days < 1) note("dataset.synthetic.days", "must be >= 1");
        if (dataset.synthetic.period < 2) note("dataset.synthetic.period", "must be >= 2");
        if (dataset.synthetic.obs_noise_sigma < 0) {
            note("dataset.synthetic.obs_noise_sigma", "must be >= 0");
        }
    }
    for (const auto& t : resample.times) {
        try {
            dataio::parse_time_of_day(t);
        } catch (const ValidationError&) {
            note("resample.times", "invalid time '" + t + "'");
        }
    }
    if (model.period < 2) note("model.period", "must be >= 2");
    if (model.sample_interval <= 0) note("model.sample_interval", "must be positive");
    if (model.obs_noise < 0) note("model.obs_noise", "must be >= 0");
    if (attractor.covariance < 0) note("attractor.covariance", "must be >= 0");
    if (attractor.weighting == meanrev::Weighting::kExponential &&
        (!(attractor.lambda > 0) || attractor.lambda > 1)) {
        note("attractor.lambda", "must be in (0, 1]");
    }
    if (split.horizon < 1) note("split.horizon", "must be >= 1");
    if (protocol.start_count < 1) note("protocol.count", "must be >= 1");
    if (protocol.horizon < 1) note("protocol.horizon", "must be >= 1");
    if (protocol.variants.empty()) note("protocol.variants", "must not be empty");
    for (const auto& name : protocol.variants) {
        if (name != "LDS" && name != "LDS_MR" && name != "LDS_WMR" && name != "DLM" &&
            name != "DLM_MR" && name != "DLM_WMR" && name != "EKF" && name != "EKF_MR") {
            note("protocol.variants", "unknown variant '" + name + "'");
        }
    }
    if (!problems.empty()) {
        throw ValidationError("invalid config: " + problems);
    }
}

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("config root must be an object");
    }

    RunConfig config;
    config.seed = get_or<std::uint64_t>(doc, "seed", "", config.seed);
    config.output_dir = get_or<std::string>(doc, "output_dir", "", config.output_dir);

    if (doc.contains("dataset")) {
        const json& d = doc.at("dataset");
        if (d.contains("csv")) {
            config.dataset.csv_path = get_or<std::string>(d, "csv", "dataset", std::string());
            config.dataset.use_synthetic = false;
            config.dataset.name = get_or<std::string>(d, "name", "dataset", std::string("csv"));
        }
        if (d.contains("synthetic")) {
            const json& s = d.at("synthetic");
            const std::string p = "dataset.synthetic";
            auto& spec = config.dataset.synthetic;
            config.dataset.use_synthetic = !d.contains("csv");
            spec.days = get_or<int>(s, "days", p, spec.days);
            spec.period = get_or<int>(s, "period", p, spec.period);
            spec.trend_kind = trend_kind_from_string(
                get_or<std::string>(s, "trend", p, to_string(spec.trend_kind)), p + ".trend");
            spec.amplitude_kind = amplitude_kind_from_string(
                get_or<std::string>(s, "amplitude_kind", p, to_string(spec.amplitude_kind)),
                p + ".amplitude_kind");
            spec.base_level = get_or<double>(s, "base_level", p, spec.base_level);
            spec.amplitude = get_or<double>(s, "amplitude", p, spec.amplitude);
            spec.amplitude_variation =
                get_or<double>(s, "amplitude_variation", p, spec.amplitude_variation);
            spec.obs_noise_sigma = get_or<double>(s, "obs_noise_sigma", p, spec.obs_noise_sigma);
            spec.phase = get_or<double>(s, "phase", p, spec.phase);
            spec.trend_slope = get_or<double>(s, "trend_slope", p, spec.trend_slope);
            if (s.contains("inflection_index")) {
                spec.inflection_index = get_or<std::size_t>(s, "inflection_index", p, 0);
            }
            spec.ou_theta = get_or<double>(s, "ou_theta", p, spec.ou_theta);
            spec.ou_sigma = get_or<double>(s, "ou_sigma", p, spec.ou_sigma);
            config.dataset.name =
                get_or<std::string>(d, "name", "dataset", std::string("synthetic"));
        }
    }

    if (doc.contains("resample")) {
        const json& r = doc.at("resample");
        config.resample.enabled = get_or<bool>(r, "enabled", "resample", false);
        config.resample.times = get_or<std::vector<std::string>>(r, "times", "resample",
                                                                 config.resample.times);
    }

    if (doc.contains("model")) {
        const json& m = doc.at("model");
        const std::string kind =
            get_or<std::string>(m, "kind", "model", to_string(config.model.kind));
        try {
            config.model.kind = models::model_kind_from_string(kind);
        } catch (const ValidationError& e) {
            fail("model.kind", e.what());
        }
        config.model.period = get_or<int>(m, "period", "model", config.model.period);
        config.model.sample_interval =
            get_or<double>(m, "sample_interval", "model", config.model.sample_interval);
        config.model.obs_noise = get_or<double>(m, "obs_noise", "model", config.model.obs_noise);
        config.model.linear_state_noise = get_or<std::vector<double>>(
            m, "linear_state_noise", "model", config.model.linear_state_noise);
        config.model.nonlinear_state_noise = get_or<std::vector<double>>(
            m, "nonlinear_state_noise", "model", config.model.nonlinear_state_noise);
        config.model.dlm_state_noise = get_or<std::vector<double>>(
            m, "dlm_state_noise", "model", config.model.dlm_state_noise);
    }

    if (doc.contains("attractor")) {
        const json& a = doc.at("attractor");
        config.attractor.enabled = get_or<bool>(a, "enabled", "attractor", true);
        config.attractor.components = get_or<std::vector<std::string>>(
            a, "components", "attractor", config.attractor.components);
        config.attractor.covariance =
            get_or<double>(a, "covariance", "attractor", config.attractor.covariance);
        config.attractor.weighting = weighting_from_string(
            get_or<std::string>(a, "weighting", "attractor",
                                config.attractor.weighting == meanrev::Weighting::kUniform
                                    ? std::string("uniform")
                                    : std::string("exponential")),
            "attractor.weighting");
        config.attractor.lambda = get_or<double>(a, "lambda", "attractor",
                                                 config.attractor.lambda);
        config.attractor.burn_in = get_or<int>(a, "burn_in", "attractor",
                                               config.attractor.burn_in);
    }

    if (doc.contains("split")) {
        const json& s = doc.at("split");
        config.split.index = get_or<std::size_t>(s, "index", "split", config.split.index);
        config.split.horizon = get_or<std::size_t>(s, "horizon", "split",
                                                   config.split.horizon);
    }

    if (doc.contains("protocol")) {
        const json& p = doc.at("protocol");
        config.protocol.start_count = get_or<int>(p, "count", "protocol",
                                                  config.protocol.start_count);
        if (p.contains("seed")) {
            config.protocol.seed = get_or<std::uint64_t>(p, "seed", "protocol", 0);
        }
        config.protocol.horizon = get_or<std::size_t>(p, "horizon", "protocol",
                                                      config.protocol.horizon);
        config.protocol.min_train = get_or<std::size_t>(p, "min_train", "protocol",
                                                        config.protocol.min_train);
        config.protocol.variants = get_or<std::vector<std::string>>(
            p, "variants", "protocol", config.protocol.variants);
    }

    config.validate();
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& config) {
    ordered_json doc;
    doc["seed"] = config.seed;
    doc["output_dir"] = config.output_dir;

    ordered_json dataset;
    dataset["name"] = config.dataset.name;
    if (config.dataset.csv_path) {
        dataset["csv"] = *config.dataset.csv_path;
    }
    if (config.dataset.use_synthetic) {
        const auto& s = config.dataset.synthetic;
        ordered_json synth;
        synth["days"] = s.days;
        synth["period"] = s.period;
        synth["trend"] = to_string(s.trend_kind);
        synth["amplitude_kind"] = to_string(s.amplitude_kind);
        synth["base_level"] = s.base_level;
        synth["amplitude"] = s.amplitude;
        synth["amplitude_variation"] = s.amplitude_variation;
        synth["obs_noise_sigma"] = s.obs_noise_sigma;
        synth["phase"] = s.phase;
        synth["trend_slope"] = s.trend_slope;
        if (s.inflection_index) {
            synth["inflection_index"] = *s.inflection_index;
        }
        synth["ou_theta"] = s.ou_theta;
        synth["ou_sigma"] = s.ou_sigma;
        dataset["synthetic"] = std::move(synth);
    }
    doc["dataset"] = std::move(dataset);

    doc["resample"] = {{"enabled", config.resample.enabled}, {"times", config.resample.times}};
    doc["model"] = {{"kind", to_string(config.model.kind)},
                    {"period", config.model.period},
                    {"sample_interval", config.model.sample_interval},
                    {"obs_noise", config.model.obs_noise},
                    {"linear_state_noise", config.model.linear_state_noise},
                    {"nonlinear_state_noise", config.model.nonlinear_state_noise},
                    {"dlm_state_noise", config.model.dlm_state_noise}};
    doc["attractor"] = {
        {"enabled", config.attractor.enabled},
        {"components", config.attractor.components},
        {"covariance", config.attractor.covariance},
        {"weighting",
         config.attractor.weighting == meanrev::Weighting::kUniform ? "uniform" : "exponential"},
        {"lambda", config.attractor.lambda},
        {"burn_in", config.attractor.burn_in}};
    doc["split"] = {{"index", config.split.index}, {"horizon", config.split.horizon}};
    ordered_json protocol;
    protocol["count"] = config.protocol.start_count;
    if (config.protocol.seed) {
        protocol["seed"] = *config.protocol.seed;
    }
    protocol["horizon"] = config.protocol.horizon;
    protocol["min_train"] = config.protocol.min_train;
    protocol["variants"] = config.protocol.variants;
    doc["protocol"] = std::move(protocol);
    return doc.dump(2) + "\n";
}

std::vector<eval::ModelVariant> make_variants(const RunConfig& config) {
    std::vector<eval::ModelVariant> variants;
    variants.reserve(config.protocol.variants.size());
    for (const auto& name : config.protocol.variants) {
        eval::ModelVariant variant;
        variant.name = name;
        models::ModelKind kind;
        if (name.rfind("LDS", 0) == 0) {
            kind = models::ModelKind::kLinearSeasonal;
        } else if (name.rfind("DLM", 0) == 0) {
            kind = models::ModelKind::kDlmFreeform;
        } else if (name.rfind("EKF", 0) == 0) {
            kind = models::ModelKind::kNonlinearAmplitude;
        } else {
            throw ValidationError("unknown variant '" + name + "'");
        }
        variant.spec = config.model.spec_for(kind);

        const bool weighted = name.ends_with("_WMR");
        const bool reverting = weighted || name.ends_with("_MR");
        if (reverting && config.attractor.enabled) {
            eval::AttractorSettings settings;
            settings.components = config.attractor.components;
            settings.covariance = config.attractor.covariance;
            settings.weighting = weighted ? meanrev::Weighting::kExponential
                                          : meanrev::Weighting::kUniform;
            settings.lambda = config.attractor.lambda;
            settings.burn_in = config.attractor.burn_in;
            variant.reversion = std::move(settings);
        }
        variants.push_back(std::move(variant));
    }
    return variants;
}

} // namespace statecast::cli
