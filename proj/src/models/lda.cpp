#include <cmath>
#include <vector>

#include "linalg.hpp"
#include "scorer.hpp"

namespace vep::detail {
namespace {

/// Two-class linear discriminant: shared pooled covariance with a ridge of
/// 1e-6 * trace/dim, Laplace-smoothed priors, posterior through the logistic
/// of the linear discriminant w.x + c.
class LdaScorer : public Scorer {
public:
    LdaScorer(std::vector<double> weights, double offset)
        : weights_(std::move(weights)), offset_(offset) {}

    double score(std::span<const double> x) const override {
        double f = offset_;
        for (std::size_t j = 0; j < weights_.size(); ++j) f += weights_[j] * x[j];
        return f >= 0 ? 1.0 / (1.0 + std::exp(-f)) : std::exp(f) / (1.0 + std::exp(f));
    }

    json fitted_params() const override {
        return json{{"weights", weights_}, {"offset", offset_}};
    }

    static ScorerPtr from_json(const json& fitted) {
        return std::make_shared<LdaScorer>(fitted.at("weights").get<std::vector<double>>(),
                                           fitted.at("offset").get<double>());
    }

private:
    std::vector<double> weights_;
    double offset_;
};

}  // namespace

ScorerPtr train_lda(const ModelSpec& spec, const SupervisedSet& data) {
    (void)spec;
    const std::size_t n = data.n();
    const std::size_t d = data.dim;

    std::size_t n1 = 0;
    std::vector<double> mean0(d, 0.0), mean1(d, 0.0), pooled_mean(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = data.input(i);
        auto& mean = data.targets[i] ? mean1 : mean0;
        for (std::size_t j = 0; j < d; ++j) {
            mean[j] += row[j];
            pooled_mean[j] += row[j];
        }
        n1 += data.targets[i];
    }
    const std::size_t n0 = n - n1;
    for (auto& m : pooled_mean) m /= static_cast<double>(n);
    if (n0 > 0)
        for (auto& m : mean0) m /= static_cast<double>(n0);
    else
        mean0 = pooled_mean;
    if (n1 > 0)
        for (auto& m : mean1) m /= static_cast<double>(n1);
    else
        mean1 = pooled_mean;

    // pooled within-class scatter
    std::vector<double> cov(d * d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = data.input(i);
        const auto& mean = data.targets[i] ? mean1 : mean0;
        for (std::size_t a = 0; a < d; ++a) {
            const double da = row[a] - mean[a];
            for (std::size_t b = a; b < d; ++b) cov[a * d + b] += da * (row[b] - mean[b]);
        }
    }
    const double denom = n > 2 ? static_cast<double>(n - 2) : static_cast<double>(n);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a; b < d; ++b) {
            cov[a * d + b] /= denom;
            cov[b * d + a] = cov[a * d + b];
        }

    double trace = 0;
    for (std::size_t a = 0; a < d; ++a) trace += cov[a * d + a];
    const double ridge = trace > 0 ? 1e-6 * trace / static_cast<double>(d) : 1e-12;
    for (std::size_t a = 0; a < d; ++a) cov[a * d + a] += ridge;

    cholesky(cov, d);
    std::vector<double> delta(d);
    for (std::size_t j = 0; j < d; ++j) delta[j] = mean1[j] - mean0[j];
    auto weights = cholesky_solve(cov, d, delta);

    const auto inv_quad = [&](const std::vector<double>& m) {
        auto sol = cholesky_solve(cov, d, m);
        double q = 0;
        for (std::size_t j = 0; j < d; ++j) q += m[j] * sol[j];
        return q;
    };
    const double prior1 = (static_cast<double>(n1) + 1.0) / (static_cast<double>(n) + 2.0);
    const double offset = -0.5 * inv_quad(mean1) + 0.5 * inv_quad(mean0) +
                          std::log(prior1 / (1.0 - prior1));
    return std::make_shared<LdaScorer>(std::move(weights), offset);
}

ScorerPtr load_lda(const json& fitted) { return LdaScorer::from_json(fitted); }

}  // namespace vep::detail
