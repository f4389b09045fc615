#include <cmath>
#include <vector>

#include "scorer.hpp"

namespace vep::detail {
namespace {

constexpr double kVarianceFloor = 1e-9;
constexpr double kLogTwoPi = 1.8378770664093454835606594728112;

/// Gaussian naive Bayes: per-feature class-conditional normals with floored
/// variance, Laplace-smoothed class priors. A class absent from the training
/// set borrows the pooled feature statistics, so its likelihood cancels and
/// the posterior falls back to the smoothed prior.
class NaiveBayesScorer : public Scorer {
public:
    NaiveBayesScorer(double log_prior0, double log_prior1, std::vector<double> mean0,
                     std::vector<double> var0, std::vector<double> mean1,
                     std::vector<double> var1)
        : log_prior0_(log_prior0),
          log_prior1_(log_prior1),
          mean0_(std::move(mean0)),
          var0_(std::move(var0)),
          mean1_(std::move(mean1)),
          var1_(std::move(var1)) {}

    double score(std::span<const double> x) const override {
        const double l0 = log_prior0_ + log_likelihood(x, mean0_, var0_);
        const double l1 = log_prior1_ + log_likelihood(x, mean1_, var1_);
        return 1.0 / (1.0 + std::exp(l0 - l1));
    }

    json fitted_params() const override {
        return json{{"log_prior0", log_prior0_}, {"log_prior1", log_prior1_},
                    {"mean0", mean0_},           {"var0", var0_},
                    {"mean1", mean1_},           {"var1", var1_}};
    }

    static ScorerPtr from_json(const json& fitted) {
        return std::make_shared<NaiveBayesScorer>(
            fitted.at("log_prior0").get<double>(), fitted.at("log_prior1").get<double>(),
            fitted.at("mean0").get<std::vector<double>>(),
            fitted.at("var0").get<std::vector<double>>(),
            fitted.at("mean1").get<std::vector<double>>(),
            fitted.at("var1").get<std::vector<double>>());
    }

private:
    static double log_likelihood(std::span<const double> x, const std::vector<double>& mean,
                                 const std::vector<double>& var) {
        double sum = 0;
        for (std::size_t j = 0; j < mean.size(); ++j) {
            const double diff = x[j] - mean[j];
            sum += -0.5 * (kLogTwoPi + std::log(var[j])) - diff * diff / (2.0 * var[j]);
        }
        return sum;
    }

    double log_prior0_;
    double log_prior1_;
    std::vector<double> mean0_, var0_;
    std::vector<double> mean1_, var1_;
};

struct ClassStats {
    std::size_t n = 0;
    std::vector<double> mean;
    std::vector<double> var;
};

ClassStats feature_stats(const SupervisedSet& data, int wanted) {
    const std::size_t d = data.dim;
    ClassStats stats;
    stats.mean.assign(d, 0.0);
    stats.var.assign(d, 0.0);
    for (std::size_t i = 0; i < data.n(); ++i) {
        if (wanted >= 0 && data.targets[i] != wanted) continue;
        ++stats.n;
        const auto row = data.input(i);
        for (std::size_t j = 0; j < d; ++j) stats.mean[j] += row[j];
    }
    if (stats.n == 0) return stats;
    for (auto& m : stats.mean) m /= static_cast<double>(stats.n);
    for (std::size_t i = 0; i < data.n(); ++i) {
        if (wanted >= 0 && data.targets[i] != wanted) continue;
        const auto row = data.input(i);
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = row[j] - stats.mean[j];
            stats.var[j] += diff * diff;
        }
    }
    for (auto& v : stats.var) v = std::max(v / static_cast<double>(stats.n), kVarianceFloor);
    return stats;
}

}  // namespace

ScorerPtr train_naive_bayes(const ModelSpec& spec, const SupervisedSet& data) {
    (void)spec;
    auto neg = feature_stats(data, 0);
    auto pos = feature_stats(data, 1);
    const auto pooled = feature_stats(data, -1);
    if (neg.n == 0) neg.mean = pooled.mean, neg.var = pooled.var;
    if (pos.n == 0) pos.mean = pooled.mean, pos.var = pooled.var;

    const double total = static_cast<double>(data.n());
    const double prior1 = (static_cast<double>(pos.n) + 1.0) / (total + 2.0);
    return std::make_shared<NaiveBayesScorer>(std::log(1.0 - prior1), std::log(prior1),
                                              std::move(neg.mean), std::move(neg.var),
                                              std::move(pos.mean), std::move(pos.var));
}

ScorerPtr load_naive_bayes(const json& fitted) { return NaiveBayesScorer::from_json(fitted); }

}  // namespace vep::detail
