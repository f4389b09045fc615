#include <algorithm>
#include <numeric>
#include <vector>

#include "scorer.hpp"

namespace vep::detail {
namespace {

/// Exact k-nearest-neighbour scorer over a kd-tree. Neighbour sets are the k
/// smallest (squared distance, training index) pairs, so distance ties break
/// toward the earlier training index.
class KnnScorer : public Scorer {
public:
    KnnScorer(std::size_t k, std::size_t dim, std::vector<double> points,
              std::vector<std::uint8_t> labels)
        : k_(std::min(k, labels.size())),
          dim_(dim),
          points_(std::move(points)),
          labels_(std::move(labels)) {
        if (labels_.empty() || dim_ == 0 || points_.size() != labels_.size() * dim_)
            throw DataError("knn: inconsistent training data");
        build();
    }

    double score(std::span<const double> x) const override {
        std::vector<Candidate> heap;
        heap.reserve(k_);
        search(root_, x, heap);
        std::size_t pos = 0;
        for (const auto& [d2, idx] : heap) pos += labels_[idx];
        return static_cast<double>(pos) / static_cast<double>(heap.size());
    }

    json fitted_params() const override {
        return json{{"k", k_},
                    {"dim", dim_},
                    {"points", points_},
                    {"labels", json(labels_)}};
    }

    static ScorerPtr from_json(const json& fitted) {
        return std::make_shared<KnnScorer>(
            fitted.at("k").get<std::size_t>(), fitted.at("dim").get<std::size_t>(),
            fitted.at("points").get<std::vector<double>>(),
            fitted.at("labels").get<std::vector<std::uint8_t>>());
    }

private:
    struct Node {
        std::size_t point = 0;
        int axis = 0;
        int left = -1;
        int right = -1;
    };
    using Candidate = std::pair<double, std::size_t>;  // (squared distance, index)

    void build() {
        const std::size_t n = labels_.size();
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        nodes_.reserve(n);
        root_ = build_range(idx, 0, n, 0);
    }

    int build_range(std::vector<std::size_t>& idx, std::size_t lo, std::size_t hi,
                    std::size_t depth) {
        if (lo >= hi) return -1;
        const auto axis = static_cast<int>(depth % dim_);
        const std::size_t mid = lo + (hi - lo) / 2;
        std::nth_element(idx.begin() + lo, idx.begin() + mid, idx.begin() + hi,
                         [&](std::size_t a, std::size_t b) {
                             const double va = coord(a, axis);
                             const double vb = coord(b, axis);
                             return va < vb || (va == vb && a < b);
                         });
        const int me = static_cast<int>(nodes_.size());
        nodes_.push_back(Node{idx[mid], axis, -1, -1});
        const int left = build_range(idx, lo, mid, depth + 1);
        const int right = build_range(idx, mid + 1, hi, depth + 1);
        nodes_[static_cast<std::size_t>(me)].left = left;
        nodes_[static_cast<std::size_t>(me)].right = right;
        return me;
    }

    double coord(std::size_t point, int axis) const {
        return points_[point * dim_ + static_cast<std::size_t>(axis)];
    }

    double dist2(std::span<const double> x, std::size_t point) const {
        double sum = 0;
        for (std::size_t j = 0; j < dim_; ++j) {
            const double diff = x[j] - points_[point * dim_ + j];
            sum += diff * diff;
        }
        return sum;
    }

    static bool worse(const Candidate& a, const Candidate& b) { return a < b; }

    void offer(const Candidate& c, std::vector<Candidate>& heap) const {
        if (heap.size() < k_) {
            heap.push_back(c);
            std::push_heap(heap.begin(), heap.end(), worse);
        } else if (c < heap.front()) {
            std::pop_heap(heap.begin(), heap.end(), worse);
            heap.back() = c;
            std::push_heap(heap.begin(), heap.end(), worse);
        }
    }

    void search(int at, std::span<const double> x, std::vector<Candidate>& heap) const {
        if (at < 0) return;
        const Node& node = nodes_[static_cast<std::size_t>(at)];
        offer({dist2(x, node.point), node.point}, heap);
        const double diff = x[static_cast<std::size_t>(node.axis)] - coord(node.point, node.axis);
        const int near = diff <= 0 ? node.left : node.right;
        const int far = diff <= 0 ? node.right : node.left;
        search(near, x, heap);
        if (far >= 0 && (heap.size() < k_ || diff * diff <= heap.front().first))
            search(far, x, heap);
    }

    std::size_t k_;
    std::size_t dim_;
    std::vector<double> points_;
    std::vector<std::uint8_t> labels_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

}  // namespace

ScorerPtr train_knn(const ModelSpec& spec, const SupervisedSet& data) {
    const auto k = static_cast<std::size_t>(hyperparameter(spec, "k"));
    return std::make_shared<KnnScorer>(k, data.dim, data.inputs, data.targets);
}

ScorerPtr load_knn(const json& fitted) { return KnnScorer::from_json(fitted); }

}  // namespace vep::detail
