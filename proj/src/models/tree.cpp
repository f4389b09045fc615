#include "tree.hpp"

#include <algorithm>
#include <numeric>

namespace vep::detail {
namespace {

double gini(std::size_t pos, std::size_t n) {
    if (n == 0) return 0.0;
    const double p = static_cast<double>(pos) / static_cast<double>(n);
    return 2.0 * p * (1.0 - p);
}

struct Split {
    bool found = false;
    int feature = -1;
    double threshold = 0;
    double impurity = 0;
};

Split best_split(const SupervisedSet& data, const std::vector<std::size_t>& idx,
                 const std::vector<int>& features, int min_leaf) {
    const std::size_t n = idx.size();
    Split best;
    best.impurity = std::numeric_limits<double>::infinity();

    std::vector<std::pair<double, std::uint8_t>> column(n);
    for (int f : features) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = data.input(idx[i]);
            column[i] = {row[static_cast<std::size_t>(f)], data.targets[idx[i]]};
        }
        std::sort(column.begin(), column.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        std::size_t pos_left = 0;
        std::size_t pos_total = 0;
        for (const auto& [v, y] : column) pos_total += y;

        for (std::size_t i = 1; i < n; ++i) {
            pos_left += column[i - 1].second;
            if (i < static_cast<std::size_t>(min_leaf) ||
                n - i < static_cast<std::size_t>(min_leaf))
                continue;
            const double lo = column[i - 1].first;
            const double hi = column[i].first;
            if (!(lo < hi)) continue;
            const double weighted =
                (static_cast<double>(i) * gini(pos_left, i) +
                 static_cast<double>(n - i) * gini(pos_total - pos_left, n - i)) /
                static_cast<double>(n);
            if (weighted < best.impurity - 1e-12) {
                double thr = lo + (hi - lo) / 2.0;
                if (!(thr < hi)) thr = lo;  // midpoint collapsed onto hi
                best = {true, f, thr, weighted};
            }
        }
    }
    return best;
}

}  // namespace

std::vector<TreeNode> build_tree(const SupervisedSet& data, std::vector<std::size_t> idx,
                                 const TreeParams& params, Rng* rng) {
    std::vector<TreeNode> nodes;
    std::vector<int> all_features(data.dim);
    std::iota(all_features.begin(), all_features.end(), 0);

    struct Frame {
        int node;
        std::vector<std::size_t> idx;
        int depth;
    };

    nodes.emplace_back();
    std::vector<Frame> stack;
    stack.push_back({0, std::move(idx), 0});

    while (!stack.empty()) {
        Frame frame = std::move(stack.back());
        stack.pop_back();

        const std::size_t n = frame.idx.size();
        std::size_t pos = 0;
        for (auto i : frame.idx) pos += data.targets[i];
        TreeNode& node = nodes[static_cast<std::size_t>(frame.node)];
        node.value = static_cast<double>(pos) / static_cast<double>(n);

        const bool pure = pos == 0 || pos == n;
        if (pure || frame.depth >= params.max_depth ||
            n < 2 * static_cast<std::size_t>(params.min_leaf))
            continue;

        std::vector<int> features = all_features;
        if (rng != nullptr && params.mtry > 0 &&
            static_cast<std::size_t>(params.mtry) < data.dim) {
            // partial Fisher-Yates, then ascending scan order
            for (int j = 0; j < params.mtry; ++j) {
                const auto pick = j + static_cast<int>(rng->next_below(
                                          static_cast<std::uint64_t>(data.dim) -
                                          static_cast<std::uint64_t>(j)));
                std::swap(features[static_cast<std::size_t>(j)],
                          features[static_cast<std::size_t>(pick)]);
            }
            features.resize(static_cast<std::size_t>(params.mtry));
            std::sort(features.begin(), features.end());
        }

        const double parent = gini(pos, n);
        const Split split = best_split(data, frame.idx, features, params.min_leaf);
        if (!split.found || !(split.impurity < parent - 1e-12)) continue;

        std::vector<std::size_t> left_idx, right_idx;
        left_idx.reserve(n);
        right_idx.reserve(n);
        for (auto i : frame.idx) {
            const auto row = data.input(i);
            (row[static_cast<std::size_t>(split.feature)] <= split.threshold ? left_idx
                                                                             : right_idx)
                .push_back(i);
        }

        const int left_node = static_cast<int>(nodes.size());
        nodes.emplace_back();
        const int right_node = static_cast<int>(nodes.size());
        nodes.emplace_back();
        TreeNode& branch = nodes[static_cast<std::size_t>(frame.node)];
        branch.feature = split.feature;
        branch.threshold = split.threshold;
        branch.left = left_node;
        branch.right = right_node;

        // push right first so the left child is processed (and numbered) first
        stack.push_back({right_node, std::move(right_idx), frame.depth + 1});
        stack.push_back({left_node, std::move(left_idx), frame.depth + 1});
    }
    return nodes;
}

double tree_score(const std::vector<TreeNode>& nodes, std::span<const double> x) {
    std::size_t at = 0;
    while (nodes[at].feature >= 0) {
        const TreeNode& node = nodes[at];
        at = static_cast<std::size_t>(
            x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                        : node.right);
    }
    return nodes[at].value;
}

json tree_to_json(const std::vector<TreeNode>& nodes) {
    json arr = json::array();
    for (const auto& n : nodes)
        arr.push_back(json::array({n.feature, n.threshold, n.left, n.right, n.value}));
    return arr;
}

std::vector<TreeNode> tree_from_json(const json& j) {
    std::vector<TreeNode> nodes;
    nodes.reserve(j.size());
    for (const auto& e : j) {
        TreeNode n;
        n.feature = e.at(0).get<int>();
        n.threshold = e.at(1).get<double>();
        n.left = e.at(2).get<int>();
        n.right = e.at(3).get<int>();
        n.value = e.at(4).get<double>();
        nodes.push_back(n);
    }
    if (nodes.empty()) throw DataError("tree with no nodes");
    return nodes;
}

}  // namespace vep::detail
