#pragma once

#include <memory>
#include <span>

#include "json.hpp"
#include "vep/models.hpp"

namespace vep::detail {

using json = nlohmann::json;

/// Kind-specific fitted parameters behind TrainedModel.
class Scorer {
public:
    virtual ~Scorer() = default;
    virtual double score(std::span<const double> x) const = 0;
    virtual json fitted_params() const = 0;
};

using ScorerPtr = std::shared_ptr<const Scorer>;

ScorerPtr train_cart(const ModelSpec& spec, const SupervisedSet& data);
ScorerPtr train_forest(const ModelSpec& spec, const SupervisedSet& data);
ScorerPtr train_knn(const ModelSpec& spec, const SupervisedSet& data);
ScorerPtr train_svm(const ModelSpec& spec, const SupervisedSet& data);
ScorerPtr train_naive_bayes(const ModelSpec& spec, const SupervisedSet& data);
ScorerPtr train_lda(const ModelSpec& spec, const SupervisedSet& data);
ScorerPtr train_dtmc(const ModelSpec& spec, const SupervisedSet& data);

ScorerPtr load_cart(const json& fitted);
ScorerPtr load_forest(const json& fitted);
ScorerPtr load_knn(const json& fitted);
ScorerPtr load_svm(const json& fitted);
ScorerPtr load_naive_bayes(const json& fitted);
ScorerPtr load_lda(const json& fitted);
ScorerPtr load_dtmc(const json& fitted);

}  // namespace vep::detail
