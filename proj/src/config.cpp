#include "vep/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

namespace vep {
namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    auto end = s.find_last_not_of(" \t\r");
    return begin == std::string::npos ? std::string() : s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(out))
        throw ConfigError("bad numeric value for `" + key + "`: " + value);
    return out;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError("bad integer value for `" + key + "`: " + value);
    return out;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        auto pos = value.find(',', start);
        if (pos == std::string::npos) pos = value.size();
        auto item = trim(value.substr(start, pos - start));
        if (!item.empty()) out.push_back(item);
        start = pos + 1;
    }
    return out;
}

void set_key(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "data") {
        config.data_path = value;
    } else if (key == "out_dir") {
        config.out_dir = value;
    } else if (key == "h") {
        const auto v = parse_int(key, value);
        if (v < 1) throw ConfigError("h must be >= 1");
        config.features.horizon = static_cast<std::size_t>(v);
    } else if (key == "L") {
        const auto v = parse_int(key, value);
        if (v < 0) throw ConfigError("L must be >= 0");
        config.features.lag = static_cast<std::size_t>(v);
    } else if (key == "d") {
        const auto v = parse_int(key, value);
        if (v < 0) throw ConfigError("d must be >= 0");
        config.features.delay = static_cast<std::size_t>(v);
    } else if (key == "v_upper") {
        config.v_upper = value == "none" ? std::nullopt
                                         : std::optional<double>(parse_double(key, value));
    } else if (key == "v_lower") {
        config.v_lower = value == "none" ? std::nullopt
                                         : std::optional<double>(parse_double(key, value));
    } else if (key == "beta_step") {
        config.beta_step = parse_double(key, value);
    } else if (key == "train_fraction") {
        config.split.train_fraction = parse_double(key, value);
    } else if (key == "calibrate_on") {
        if (value == "train")
            config.calibrate_on = CalibrateOn::train;
        else if (value == "test")
            config.calibrate_on = CalibrateOn::test;
        else
            throw ConfigError("calibrate_on must be `train` or `test`, got " + value);
    } else if (key == "models") {
        config.models.clear();
        for (const auto& name : split_list(value)) {
            ModelSpec spec;
            spec.kind = model_kind_from_string(name);
            spec.seed = config.seed;
            config.models.push_back(std::move(spec));
        }
    } else if (key == "seed") {
        config.seed = static_cast<std::uint64_t>(parse_int(key, value));
        config.synth.seed = config.seed;
        for (auto& m : config.models) m.seed = config.seed;
    } else if (key == "jobs") {
        const auto v = parse_int(key, value);
        if (v < 0) throw ConfigError("jobs must be >= 0");
        config.jobs = static_cast<int>(v);
    } else if (key == "n_buses") {
        config.synth.n_buses = static_cast<int>(parse_int(key, value));
    } else if (key == "n_samples") {
        config.synth.n_samples = static_cast<std::size_t>(parse_int(key, value));
    } else if (key == "base_level") {
        config.synth.base_level = parse_double(key, value);
    } else if (key == "diurnal_amplitude") {
        config.synth.diurnal_amplitude = parse_double(key, value);
    } else if (key == "noise_std") {
        config.synth.noise_std = parse_double(key, value);
    } else if (key == "wind_surge_rate") {
        config.synth.wind_surge_rate = parse_double(key, value);
    } else if (key == "wind_surge_magnitude") {
        config.synth.wind_surge_magnitude = parse_double(key, value);
    } else if (key == "per_bus_offset") {
        config.synth.per_bus_offset = parse_double(key, value);
    } else if (auto dot = key.find('.'); dot != std::string::npos) {
        // per-model hyperparameter, e.g. knn.k = 15
        const ModelKind kind = model_kind_from_string(key.substr(0, dot));
        const std::string hyper_key = key.substr(dot + 1);
        const auto it = std::find_if(config.models.begin(), config.models.end(),
                                     [&](const ModelSpec& m) { return m.kind == kind; });
        if (it == config.models.end())
            throw ConfigError("hyperparameter `" + key + "` targets a model not in `models`");
        it->hyper[hyper_key] = parse_double(key, value);
        validate(*it);
    } else {
        throw ConfigError("unknown configuration key: " + key);
    }
}

}  // namespace

RunConfig::RunConfig() {
    for (ModelKind kind : all_model_kinds()) {
        ModelSpec spec;
        spec.kind = kind;
        spec.seed = seed;
        models.push_back(std::move(spec));
    }
    synth.seed = seed;
}

void validate(const RunConfig& config) {
    if (!config.v_upper && !config.v_lower)
        throw ConfigError("at least one of v_upper / v_lower must be set");
    if (config.v_upper && config.v_lower && !(*config.v_lower < *config.v_upper))
        throw ConfigError("v_lower must be below v_upper");
    if (!(config.beta_step > 0.0 && config.beta_step <= 1.0))
        throw ConfigError("beta_step must lie in (0, 1]");
    if (!(config.split.train_fraction > 0.0 && config.split.train_fraction < 1.0))
        throw ConfigError("train_fraction must lie in (0, 1)");
    validate(config.features);
    if (config.models.empty()) throw ConfigError("model list is empty");
    for (const auto& m : config.models) validate(m);
    for (std::size_t i = 0; i < config.models.size(); ++i)
        for (std::size_t j = i + 1; j < config.models.size(); ++j)
            if (config.models[i].kind == config.models[j].kind)
                throw ConfigError(std::string("duplicate model kind: ") +
                                  to_string(config.models[i].kind));
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());

    RunConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected `key = value`");
        try {
            set_key(config, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return config;
}

void apply_override(RunConfig& config, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must be `key=value`: " + assignment);
    set_key(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

}  // namespace vep
