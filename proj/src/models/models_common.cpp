#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "scorer.hpp"

namespace vep {
namespace {

struct HyperDef {
    const char* key;
    double deflt;
    double min;
    double max;
};

const std::vector<HyperDef>& hyper_defs(ModelKind kind) {
    static const std::vector<HyperDef> cart = {{"max_depth", 8, 1, 64},
                                               {"min_leaf", 5, 1, 1e9}};
    static const std::vector<HyperDef> forest = {{"n_trees", 100, 1, 1e6},
                                                 {"max_depth", 8, 1, 64},
                                                 {"min_leaf", 5, 1, 1e9},
                                                 {"bootstrap", 1, 0, 1},
                                                 {"mtry", 0, 0, 1e6}};
    static const std::vector<HyperDef> knn = {{"k", 15, 1, 1e9}};
    static const std::vector<HyperDef> svm = {{"epochs", 200, 1, 1e6},
                                              {"lambda", 1e-3, 1e-12, 1e6}};
    static const std::vector<HyperDef> none = {};
    static const std::vector<HyperDef> dtmc = {{"n_bins", 10, 1, 1e6},
                                               {"alpha", 1, 0, 1e9}};
    switch (kind) {
        case ModelKind::cart: return cart;
        case ModelKind::random_forest: return forest;
        case ModelKind::knn: return knn;
        case ModelKind::svm: return svm;
        case ModelKind::naive_bayes: return none;
        case ModelKind::lda: return none;
        case ModelKind::dtmc: return dtmc;
    }
    return none;
}

}  // namespace

const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::cart: return "cart";
        case ModelKind::random_forest: return "random_forest";
        case ModelKind::knn: return "knn";
        case ModelKind::svm: return "svm";
        case ModelKind::naive_bayes: return "naive_bayes";
        case ModelKind::lda: return "lda";
        case ModelKind::dtmc: return "dtmc";
    }
    return "?";
}

ModelKind model_kind_from_string(const std::string& name) {
    for (ModelKind kind : all_model_kinds())
        if (name == to_string(kind)) return kind;
    throw ConfigError("unknown model kind: " + name);
}

const std::vector<ModelKind>& all_model_kinds() {
    static const std::vector<ModelKind> kinds = {
        ModelKind::cart, ModelKind::random_forest, ModelKind::knn,    ModelKind::svm,
        ModelKind::naive_bayes, ModelKind::lda,    ModelKind::dtmc};
    return kinds;
}

void validate(const ModelSpec& spec) {
    const auto& defs = hyper_defs(spec.kind);
    for (const auto& [key, value] : spec.hyper) {
        const auto def = std::find_if(defs.begin(), defs.end(),
                                      [&](const HyperDef& d) { return key == d.key; });
        if (def == defs.end())
            throw ConfigError(std::string("unknown hyperparameter `") + key + "` for model " +
                              to_string(spec.kind));
        if (!std::isfinite(value) || value < def->min || value > def->max)
            throw ConfigError(std::string("hyperparameter `") + key + "` out of range for " +
                              to_string(spec.kind));
    }
}

double hyperparameter(const ModelSpec& spec, const std::string& key) {
    const auto it = spec.hyper.find(key);
    if (it != spec.hyper.end()) return it->second;
    for (const auto& def : hyper_defs(spec.kind))
        if (key == def.key) return def.deflt;
    throw ConfigError(std::string("no hyperparameter `") + key + "` for model " +
                      to_string(spec.kind));
}

TrainedModel::TrainedModel(ModelSpec spec, std::size_t feature_dim, std::size_t n_examples,
                           std::size_t n_positive, std::shared_ptr<const detail::Scorer> impl)
    : spec_(std::move(spec)),
      feature_dim_(feature_dim),
      n_examples_(n_examples),
      n_positive_(n_positive),
      impl_(std::move(impl)) {}

double TrainedModel::score(std::span<const double> input) const {
    if (input.size() != feature_dim_)
        throw DataError("score: expected " + std::to_string(feature_dim_) +
                        " features, got " + std::to_string(input.size()));
    for (double v : input)
        if (!std::isfinite(v)) throw DataError("score: non-finite input value");
    return impl_->score(input);
}

std::vector<double> TrainedModel::score_all(const SupervisedSet& data) const {
    std::vector<double> scores(data.n());
    for (std::size_t i = 0; i < data.n(); ++i) scores[i] = score(data.input(i));
    return scores;
}

TrainedModel train(const ModelSpec& spec, const SupervisedSet& data) {
    validate(spec);
    if (data.n() == 0) throw DataError("train: empty supervised set");
    if (data.dim == 0 || data.inputs.size() != data.n() * data.dim)
        throw DataError("train: inconsistent feature dimensions");
    for (double v : data.inputs)
        if (!std::isfinite(v)) throw DataError("train: non-finite feature value");

    detail::ScorerPtr impl;
    switch (spec.kind) {
        case ModelKind::cart: impl = detail::train_cart(spec, data); break;
        case ModelKind::random_forest: impl = detail::train_forest(spec, data); break;
        case ModelKind::knn: impl = detail::train_knn(spec, data); break;
        case ModelKind::svm: impl = detail::train_svm(spec, data); break;
        case ModelKind::naive_bayes: impl = detail::train_naive_bayes(spec, data); break;
        case ModelKind::lda: impl = detail::train_lda(spec, data); break;
        case ModelKind::dtmc: impl = detail::train_dtmc(spec, data); break;
    }
    return TrainedModel(spec, data.dim, data.n(), data.positive_count(), std::move(impl));
}

int predict_label(const TrainedModel& model, std::span<const double> input, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("beta must lie in [0, 1]");
    return model.score(input) >= beta ? 1 : 0;
}

std::string TrainedModel::to_json() const {
    detail::json j;
    j["format"] = "vep-model-v1";
    j["kind"] = to_string(spec_.kind);
    j["seed"] = spec_.seed;
    j["hyperparameters"] = spec_.hyper;
    j["feature_dim"] = feature_dim_;
    j["examples"] = n_examples_;
    j["positives"] = n_positive_;
    j["fitted"] = impl_->fitted_params();
    return j.dump(2);
}

TrainedModel TrainedModel::from_json(const std::string& text) {
    detail::json j;
    try {
        j = detail::json::parse(text);
    } catch (const detail::json::exception& e) {
        throw DataError(std::string("model file is not valid JSON: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "vep-model-v1")
            throw DataError("unsupported model file format");
        ModelSpec spec;
        spec.kind = model_kind_from_string(j.at("kind").get<std::string>());
        spec.seed = j.at("seed").get<std::uint64_t>();
        spec.hyper = j.at("hyperparameters").get<std::map<std::string, double>>();
        validate(spec);

        const auto& fitted = j.at("fitted");
        detail::ScorerPtr impl;
        switch (spec.kind) {
            case ModelKind::cart: impl = detail::load_cart(fitted); break;
            case ModelKind::random_forest: impl = detail::load_forest(fitted); break;
            case ModelKind::knn: impl = detail::load_knn(fitted); break;
            case ModelKind::svm: impl = detail::load_svm(fitted); break;
            case ModelKind::naive_bayes: impl = detail::load_naive_bayes(fitted); break;
            case ModelKind::lda: impl = detail::load_lda(fitted); break;
            case ModelKind::dtmc: impl = detail::load_dtmc(fitted); break;
        }
        return TrainedModel(std::move(spec), j.at("feature_dim").get<std::size_t>(),
                            j.at("examples").get<std::size_t>(),
                            j.at("positives").get<std::size_t>(), std::move(impl));
    } catch (const detail::json::exception& e) {
        throw DataError(std::string("malformed model file: ") + e.what());
    }
}

void TrainedModel::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file: " + path.string());
    out << to_json() << '\n';
    if (!out) throw DataError("write failed: " + path.string());
}

TrainedModel TrainedModel::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json(buffer.str());
}

}  // namespace vep
