#include <cmath>
#include <vector>

#include "scorer.hpp"

namespace vep::detail {
namespace {

/// Linear SVM trained by epoch-ordered Pegasos-style subgradient descent on
/// z-scored inputs (bias carried as an augmented constant feature), with a
/// Platt sigmoid mapping decision values to probabilities.
class SvmScorer : public Scorer {
public:
    SvmScorer(std::vector<double> weights, std::vector<double> means,
              std::vector<double> stds, double platt_a, double platt_b)
        : weights_(std::move(weights)),
          means_(std::move(means)),
          stds_(std::move(stds)),
          platt_a_(platt_a),
          platt_b_(platt_b) {}

    double decision(std::span<const double> x) const {
        const std::size_t d = means_.size();
        double f = weights_[d];  // bias term
        for (std::size_t j = 0; j < d; ++j)
            f += weights_[j] * (x[j] - means_[j]) / stds_[j];
        return f;
    }

    double score(std::span<const double> x) const override {
        const double arg = platt_a_ * decision(x) + platt_b_;
        // stable sigmoid of -arg
        return arg >= 0 ? std::exp(-arg) / (1.0 + std::exp(-arg)) : 1.0 / (1.0 + std::exp(arg));
    }

    json fitted_params() const override {
        return json{{"weights", weights_},
                    {"means", means_},
                    {"stds", stds_},
                    {"platt_a", platt_a_},
                    {"platt_b", platt_b_}};
    }

    static ScorerPtr from_json(const json& fitted) {
        return std::make_shared<SvmScorer>(fitted.at("weights").get<std::vector<double>>(),
                                           fitted.at("means").get<std::vector<double>>(),
                                           fitted.at("stds").get<std::vector<double>>(),
                                           fitted.at("platt_a").get<double>(),
                                           fitted.at("platt_b").get<double>());
    }

private:
    std::vector<double> weights_;  // d standardized weights + bias
    std::vector<double> means_;
    std::vector<double> stds_;
    double platt_a_;
    double platt_b_;
};

/// Platt's probabilistic output fit (Lin-Weng-Keerthi Newton iteration with
/// backtracking). Returns (A, B) with P(y=1|f) = 1 / (1 + exp(A*f + B)).
std::pair<double, double> fit_platt(const std::vector<double>& decisions,
                                    const std::vector<std::uint8_t>& labels) {
    const std::size_t n = decisions.size();
    double prior1 = 0, prior0 = 0;
    for (auto y : labels) (y ? prior1 : prior0) += 1.0;

    constexpr int max_iter = 100;
    constexpr double min_step = 1e-10;
    constexpr double sigma = 1e-12;
    constexpr double eps = 1e-5;
    const double hi_target = (prior1 + 1.0) / (prior1 + 2.0);
    const double lo_target = 1.0 / (prior0 + 2.0);

    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = labels[i] ? hi_target : lo_target;

    double a = 0.0;
    double b = std::log((prior0 + 1.0) / (prior1 + 1.0));
    auto objective = [&](double aa, double bb) {
        double fval = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double f_ab = decisions[i] * aa + bb;
            fval += f_ab >= 0 ? t[i] * f_ab + std::log1p(std::exp(-f_ab))
                              : (t[i] - 1.0) * f_ab + std::log1p(std::exp(f_ab));
        }
        return fval;
    };
    double fval = objective(a, b);

    for (int iter = 0; iter < max_iter; ++iter) {
        double h11 = sigma, h22 = sigma, h21 = 0, g1 = 0, g2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double f_ab = decisions[i] * a + b;
            const double p = f_ab >= 0 ? std::exp(-f_ab) / (1.0 + std::exp(-f_ab))
                                       : 1.0 / (1.0 + std::exp(f_ab));
            const double q = 1.0 - p;
            const double d2 = p * q;
            h11 += decisions[i] * decisions[i] * d2;
            h22 += d2;
            h21 += decisions[i] * d2;
            const double d1 = t[i] - p;
            g1 += decisions[i] * d1;
            g2 += d1;
        }
        if (std::abs(g1) < eps && std::abs(g2) < eps) break;

        const double det = h11 * h22 - h21 * h21;
        const double da = -(h22 * g1 - h21 * g2) / det;
        const double db = -(-h21 * g1 + h11 * g2) / det;
        const double gd = g1 * da + g2 * db;

        double stepsize = 1.0;
        while (stepsize >= min_step) {
            const double new_a = a + stepsize * da;
            const double new_b = b + stepsize * db;
            const double new_f = objective(new_a, new_b);
            if (new_f < fval + 1e-4 * stepsize * gd) {
                a = new_a;
                b = new_b;
                fval = new_f;
                break;
            }
            stepsize /= 2.0;
        }
        if (stepsize < min_step) break;
    }
    return {a, b};
}

}  // namespace

ScorerPtr train_svm(const ModelSpec& spec, const SupervisedSet& data) {
    const auto epochs = static_cast<std::size_t>(hyperparameter(spec, "epochs"));
    const double lambda = hyperparameter(spec, "lambda");
    const std::size_t n = data.n();
    const std::size_t d = data.dim;

    std::vector<double> means(d, 0.0), stds(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = data.input(i);
        for (std::size_t j = 0; j < d; ++j) means[j] += row[j];
    }
    for (auto& m : means) m /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = data.input(i);
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = row[j] - means[j];
            stds[j] += diff * diff;
        }
    }
    for (auto& s : stds) s = std::max(std::sqrt(s / static_cast<double>(n)), 1e-12);

    // z-scored rows with the constant bias feature appended
    std::vector<double> z(n * (d + 1));
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = data.input(i);
        for (std::size_t j = 0; j < d; ++j) z[i * (d + 1) + j] = (row[j] - means[j]) / stds[j];
        z[i * (d + 1) + d] = 1.0;
    }

    std::vector<double> w(d + 1, 0.0);
    std::size_t step = 0;
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        for (std::size_t i = 0; i < n; ++i) {
            ++step;
            const double eta = 1.0 / (lambda * static_cast<double>(step));
            const double* zi = &z[i * (d + 1)];
            double margin = 0;
            for (std::size_t j = 0; j <= d; ++j) margin += w[j] * zi[j];
            const double y = data.targets[i] ? 1.0 : -1.0;
            const double shrink = 1.0 - eta * lambda;
            for (std::size_t j = 0; j <= d; ++j) w[j] *= shrink;
            if (y * margin < 1.0)
                for (std::size_t j = 0; j <= d; ++j) w[j] += eta * y * zi[j];
        }
    }

    std::vector<double> decisions(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* zi = &z[i * (d + 1)];
        double f = 0;
        for (std::size_t j = 0; j <= d; ++j) f += w[j] * zi[j];
        decisions[i] = f;
    }
    const auto [platt_a, platt_b] = fit_platt(decisions, data.targets);
    return std::make_shared<SvmScorer>(std::move(w), std::move(means), std::move(stds),
                                       platt_a, platt_b);
}

ScorerPtr load_svm(const json& fitted) { return SvmScorer::from_json(fitted); }

}  // namespace vep::detail
