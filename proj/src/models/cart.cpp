#include <numeric>

#include "tree.hpp"

namespace vep::detail {
namespace {

class CartScorer : public Scorer {
public:
    explicit CartScorer(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

    double score(std::span<const double> x) const override { return tree_score(nodes_, x); }

    json fitted_params() const override { return json{{"nodes", tree_to_json(nodes_)}}; }

private:
    std::vector<TreeNode> nodes_;
};

}  // namespace

ScorerPtr train_cart(const ModelSpec& spec, const SupervisedSet& data) {
    TreeParams params;
    params.max_depth = static_cast<int>(hyperparameter(spec, "max_depth"));
    params.min_leaf = static_cast<int>(hyperparameter(spec, "min_leaf"));
    std::vector<std::size_t> idx(data.n());
    std::iota(idx.begin(), idx.end(), 0);
    return std::make_shared<CartScorer>(build_tree(data, std::move(idx), params, nullptr));
}

ScorerPtr load_cart(const json& fitted) {
    return std::make_shared<CartScorer>(tree_from_json(fitted.at("nodes")));
}

}  // namespace vep::detail
