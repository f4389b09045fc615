#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "scorer.hpp"

namespace vep::detail {
namespace {

/// Discrete-time Markov chain over quantized voltage states. The input
/// window is the state tuple (order = window length, 2 at the default lag),
/// quantized into uniform bins spanning the training value range; out-of-range
/// values clamp to the edge bins. Scores are Laplace-smoothed outcome
/// frequencies per state; unseen states back off to the smoothed global
/// positive ratio.
class DtmcScorer : public Scorer {
public:
    DtmcScorer(std::size_t n_bins, double alpha, double vmin, double vmax, std::size_t dim,
               std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> counts,
               std::uint64_t total, std::uint64_t positives)
        : n_bins_(n_bins),
          alpha_(alpha),
          vmin_(vmin),
          vmax_(vmax),
          dim_(dim),
          counts_(std::move(counts)),
          total_(total),
          positives_(positives) {}

    double score(std::span<const double> x) const override {
        const auto it = counts_.find(state_code(x));
        if (it == counts_.end())
            return (static_cast<double>(positives_) + alpha_) /
                   (static_cast<double>(total_) + 2.0 * alpha_);
        const auto [seen, pos] = it->second;
        return (static_cast<double>(pos) + alpha_) /
               (static_cast<double>(seen) + 2.0 * alpha_);
    }

    std::uint64_t state_code(std::span<const double> x) const {
        std::uint64_t code = 0;
        for (std::size_t j = 0; j < dim_; ++j) code = code * n_bins_ + bin_of(x[j]);
        return code;
    }

    std::uint64_t bin_of(double v) const {
        const double width = (vmax_ - vmin_) / static_cast<double>(n_bins_);
        if (!(width > 0)) return 0;
        const auto raw = static_cast<std::int64_t>(std::floor((v - vmin_) / width));
        return static_cast<std::uint64_t>(
            std::clamp<std::int64_t>(raw, 0, static_cast<std::int64_t>(n_bins_) - 1));
    }

    json fitted_params() const override {
        json table = json::array();
        for (const auto& [code, cnt] : counts_)
            table.push_back(json::array({code, cnt.first, cnt.second}));
        return json{{"n_bins", n_bins_}, {"alpha", alpha_}, {"vmin", vmin_},
                    {"vmax", vmax_},     {"dim", dim_},     {"counts", table},
                    {"total", total_},   {"positives", positives_}};
    }

    static ScorerPtr from_json(const json& fitted) {
        std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> counts;
        for (const auto& row : fitted.at("counts"))
            counts[row.at(0).get<std::uint64_t>()] = {row.at(1).get<std::uint64_t>(),
                                                      row.at(2).get<std::uint64_t>()};
        return std::make_shared<DtmcScorer>(
            fitted.at("n_bins").get<std::size_t>(), fitted.at("alpha").get<double>(),
            fitted.at("vmin").get<double>(), fitted.at("vmax").get<double>(),
            fitted.at("dim").get<std::size_t>(), std::move(counts),
            fitted.at("total").get<std::uint64_t>(),
            fitted.at("positives").get<std::uint64_t>());
    }

private:
    std::size_t n_bins_;
    double alpha_;
    double vmin_;
    double vmax_;
    std::size_t dim_;
    std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> counts_;
    std::uint64_t total_;
    std::uint64_t positives_;
};

}  // namespace

ScorerPtr train_dtmc(const ModelSpec& spec, const SupervisedSet& data) {
    const auto n_bins = static_cast<std::size_t>(hyperparameter(spec, "n_bins"));
    const double alpha = hyperparameter(spec, "alpha");

    double code_space = 1.0;
    for (std::size_t j = 0; j < data.dim; ++j) code_space *= static_cast<double>(n_bins);
    if (code_space > 9e18)
        throw ConfigError("dtmc: n_bins^window exceeds the state-code range");

    double vmin = data.inputs.front();
    double vmax = vmin;
    for (double v : data.inputs) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }

    std::uint64_t positives = 0;
    for (auto y : data.targets) positives += y;

    DtmcScorer quantizer(n_bins, alpha, vmin, vmax, data.dim, {}, 0, 0);
    std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> counts;
    for (std::size_t i = 0; i < data.n(); ++i) {
        auto& cell = counts[quantizer.state_code(data.input(i))];
        cell.first += 1;
        cell.second += data.targets[i];
    }
    return std::make_shared<DtmcScorer>(n_bins, alpha, vmin, vmax, data.dim,
                                        std::move(counts), data.n(), positives);
}

ScorerPtr load_dtmc(const json& fitted) { return DtmcScorer::from_json(fitted); }

}  // namespace vep::detail
