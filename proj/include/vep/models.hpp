#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "vep/features.hpp"

namespace vep {

enum class ModelKind { cart, random_forest, knn, svm, naive_bayes, lda, dtmc };

const char* to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);
const std::vector<ModelKind>& all_model_kinds();

/// Classifier request. Hyperparameters are a kind-specific key-value map;
/// unknown keys are rejected. Omitted keys take the documented defaults:
///   cart:          max_depth=8, min_leaf=5
///   random_forest: n_trees=100, max_depth=8, min_leaf=5, bootstrap=1,
///                  mtry=0 (0 = ceil(sqrt(feature_dim)))
///   knn:           k=15
///   svm:           epochs=200, lambda=1e-3
///   naive_bayes:   (none)
///   lda:           (none)
///   dtmc:          n_bins=10, alpha=1
struct ModelSpec {
    ModelKind kind = ModelKind::cart;
    std::map<std::string, double> hyper;
    std::uint64_t seed = 1;
};

/// Throws ConfigError on unknown keys or out-of-range values.
void validate(const ModelSpec& spec);

/// Resolved hyperparameter (default applied).
double hyperparameter(const ModelSpec& spec, const std::string& key);

namespace detail {
class Scorer;
}

/// Immutable fitted classifier exposing P(y=1 | input) in [0, 1].
class TrainedModel {
public:
    ModelKind kind() const { return spec_.kind; }
    const ModelSpec& spec() const { return spec_; }
    std::size_t feature_dim() const { return feature_dim_; }
    std::size_t example_count() const { return n_examples_; }
    std::size_t positive_count() const { return n_positive_; }

    /// Throws DataError on dimension mismatch or non-finite input.
    double score(std::span<const double> input) const;
    std::vector<double> score_all(const SupervisedSet& data) const;

    /// Self-describing JSON: kind, hyperparameters, seed, metadata and the
    /// fitted parameters. Round-trips scores exactly.
    std::string to_json() const;
    static TrainedModel from_json(const std::string& text);

    void save(const std::filesystem::path& path) const;
    static TrainedModel load(const std::filesystem::path& path);

    TrainedModel(ModelSpec spec, std::size_t feature_dim, std::size_t n_examples,
                 std::size_t n_positive, std::shared_ptr<const detail::Scorer> impl);

private:
    ModelSpec spec_;
    std::size_t feature_dim_ = 0;
    std::size_t n_examples_ = 0;
    std::size_t n_positive_ = 0;
    std::shared_ptr<const detail::Scorer> impl_;
};

/// Deterministic given (spec.seed, data). Throws DataError on an empty set.
TrainedModel train(const ModelSpec& spec, const SupervisedSet& data);

/// 1 iff score >= beta. Throws ConfigError when beta is outside [0, 1].
int predict_label(const TrainedModel& model, std::span<const double> input, double beta);

}  // namespace vep
