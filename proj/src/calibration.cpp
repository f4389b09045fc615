#include "vep/calibration.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "vep/types.hpp"

namespace vep {
namespace {

struct SweepContext {
    std::vector<double> sorted_scores;
    std::vector<std::size_t> pos_prefix;  // positives among the i smallest scores
    std::size_t n = 0;
    std::size_t positives = 0;
    std::size_t negatives = 0;
};

SweepContext prepare(std::span<const double> scores, std::span<const std::uint8_t> truth,
                     double grid_step) {
    if (scores.size() != truth.size())
        throw DataError("roc: score and truth lengths differ");
    if (scores.empty()) throw DataError("roc: empty input");
    if (!(grid_step > 0.0 && grid_step <= 1.0))
        throw ConfigError("grid_step must lie in (0, 1]");
    for (double s : scores)
        if (!(s >= 0.0 && s <= 1.0)) throw DataError("roc: score outside [0, 1]");

    SweepContext ctx;
    ctx.n = scores.size();
    std::vector<std::size_t> order(ctx.n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] < scores[b];
    });

    ctx.sorted_scores.resize(ctx.n);
    ctx.pos_prefix.assign(ctx.n + 1, 0);
    for (std::size_t i = 0; i < ctx.n; ++i) {
        ctx.sorted_scores[i] = scores[order[i]];
        ctx.pos_prefix[i + 1] = ctx.pos_prefix[i] + (truth[order[i]] ? 1 : 0);
    }
    ctx.positives = ctx.pos_prefix[ctx.n];
    ctx.negatives = ctx.n - ctx.positives;
    if (ctx.positives == 0 || ctx.negatives == 0)
        throw DataError("roc: truth must contain at least one positive and one negative");
    return ctx;
}

// (FPR, TPR) when predicting score >= beta positive
std::pair<double, double> rates_at(const SweepContext& ctx, double beta) {
    const auto it = std::lower_bound(ctx.sorted_scores.begin(), ctx.sorted_scores.end(), beta);
    const auto idx = static_cast<std::size_t>(it - ctx.sorted_scores.begin());
    const std::size_t tp = ctx.positives - ctx.pos_prefix[idx];
    const std::size_t fp = (ctx.n - idx) - tp;
    return {static_cast<double>(fp) / static_cast<double>(ctx.negatives),
            static_cast<double>(tp) / static_cast<double>(ctx.positives)};
}

std::vector<double> beta_grid(double grid_step) {
    std::vector<double> grid;
    for (std::size_t i = 0;; ++i) {
        const double b = static_cast<double>(i) * grid_step;
        if (b >= 1.0 - 1e-12) break;
        grid.push_back(b);
    }
    grid.push_back(1.0);
    return grid;
}

}  // namespace

RocCurve roc(std::span<const double> scores, std::span<const std::uint8_t> truth,
             double grid_step) {
    const auto ctx = prepare(scores, truth, grid_step);
    const auto grid = beta_grid(grid_step);

    RocCurve curve;
    curve.points.reserve(grid.size() + 1);
    // anchor just above the score range forces the (0, 0) endpoint
    curve.points.push_back(RocPoint{1.0 + grid_step, 0.0, 0.0});
    for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
        const auto [fpr, tpr] = rates_at(ctx, *it);
        curve.points.push_back(RocPoint{*it, fpr, tpr});
    }

    // trapezoid over the polyline sorted by FPR; the sweep already emits
    // non-decreasing (FPR, TPR) as beta falls
    double auc = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i - 1];
        const auto& b = curve.points[i];
        auc += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
    }
    curve.auc = auc;
    return curve;
}

Calibration select_beta(std::span<const double> scores,
                        std::span<const std::uint8_t> truth, double grid_step) {
    const auto ctx = prepare(scores, truth, grid_step);
    const auto grid = beta_grid(grid_step);

    Calibration cal;
    cal.grid_step = grid_step;
    cal.beta_star = 1.0;
    cal.gm_at_star = -1.0;
    // descending sweep keeps the largest beta on ties
    for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
        const auto [fpr, tpr] = rates_at(ctx, *it);
        const double gm = std::sqrt(tpr * (1.0 - fpr));
        if (gm > cal.gm_at_star) {
            cal.gm_at_star = gm;
            cal.beta_star = *it;
        }
    }
    return cal;
}

void write_roc_csv(const RocCurve& curve, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path.string());
    out << "beta,fpr,tpr\n";
    std::array<char, 32> buf;
    auto emit = [&](double v, char tail) {
        auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
        out << std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data())) << tail;
    };
    for (const auto& p : curve.points) {
        emit(p.beta, ',');
        emit(p.fpr, ',');
        emit(p.tpr, '\n');
    }
    if (!out) throw DataError("write failed: " + path.string());
}

}  // namespace vep
