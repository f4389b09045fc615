#pragma once

#include <vector>

#include "vep/features.hpp"
#include "vep/rng.hpp"

#include "scorer.hpp"

namespace vep::detail {

/// Binary axis-aligned CART node. feature == -1 marks a leaf whose value is
/// the positive proportion of the training examples it received.
struct TreeNode {
    int feature = -1;
    double threshold = 0;
    int left = -1;
    int right = -1;
    double value = 0;
};

struct TreeParams {
    int max_depth = 8;
    int min_leaf = 5;
    int mtry = 0;  // features tried per split; 0 = all
};

/// Gini-greedy top-down induction over the index subset. rng is consumed
/// only when mtry limits the per-split feature sample (random forest use);
/// pass nullptr for plain CART.
std::vector<TreeNode> build_tree(const SupervisedSet& data, std::vector<std::size_t> idx,
                                 const TreeParams& params, Rng* rng);

double tree_score(const std::vector<TreeNode>& nodes, std::span<const double> x);

json tree_to_json(const std::vector<TreeNode>& nodes);
std::vector<TreeNode> tree_from_json(const json& j);

}  // namespace vep::detail
