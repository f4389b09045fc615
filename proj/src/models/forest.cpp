#include <cmath>
#include <numeric>

#include "tree.hpp"

namespace vep::detail {
namespace {

class ForestScorer : public Scorer {
public:
    explicit ForestScorer(std::vector<std::vector<TreeNode>> trees)
        : trees_(std::move(trees)) {}

    double score(std::span<const double> x) const override {
        double sum = 0;
        for (const auto& tree : trees_) sum += tree_score(tree, x);
        return sum / static_cast<double>(trees_.size());
    }

    json fitted_params() const override {
        json arr = json::array();
        for (const auto& tree : trees_) arr.push_back(tree_to_json(tree));
        return json{{"trees", arr}};
    }

private:
    std::vector<std::vector<TreeNode>> trees_;
};

}  // namespace

ScorerPtr train_forest(const ModelSpec& spec, const SupervisedSet& data) {
    const auto n_trees = static_cast<std::size_t>(hyperparameter(spec, "n_trees"));
    const bool bootstrap = hyperparameter(spec, "bootstrap") != 0.0;
    TreeParams params;
    params.max_depth = static_cast<int>(hyperparameter(spec, "max_depth"));
    params.min_leaf = static_cast<int>(hyperparameter(spec, "min_leaf"));
    params.mtry = static_cast<int>(hyperparameter(spec, "mtry"));
    if (params.mtry == 0)
        params.mtry = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(data.dim))));

    const std::size_t n = data.n();
    std::vector<std::vector<TreeNode>> trees;
    trees.reserve(n_trees);
    for (std::size_t t = 0; t < n_trees; ++t) {
        auto rng = Rng::stream(spec.seed, 0x464f52ULL, static_cast<std::uint64_t>(t));
        std::vector<std::size_t> idx(n);
        if (bootstrap) {
            for (auto& i : idx) i = rng.next_below(n);
            std::sort(idx.begin(), idx.end());
        } else {
            std::iota(idx.begin(), idx.end(), 0);
        }
        trees.push_back(build_tree(data, std::move(idx), params, &rng));
    }
    return std::make_shared<ForestScorer>(std::move(trees));
}

ScorerPtr load_forest(const json& fitted) {
    std::vector<std::vector<TreeNode>> trees;
    for (const auto& t : fitted.at("trees")) trees.push_back(tree_from_json(t));
    if (trees.empty()) throw DataError("forest with no trees");
    return std::make_shared<ForestScorer>(std::move(trees));
}

}  // namespace vep::detail
