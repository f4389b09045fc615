#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace vep {

struct RocPoint {
    double beta = 0;
    double fpr = 0;
    double tpr = 0;
};

/// ROC sweep, beta descending. The first point is a (0,0) anchor taken just
/// above the score range; the last (beta = 0) is (1,1).
struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0;
};

/// Sweeps beta over {0, grid_step, ..., 1}, thresholding score >= beta.
/// AUC is the trapezoidal integral of the (FPR, TPR) polyline sorted by FPR.
/// Throws DataError unless truth holds at least one positive and one negative.
RocCurve roc(std::span<const double> scores, std::span<const std::uint8_t> truth,
             double grid_step);

struct Calibration {
    double beta_star = 1.0;
    double gm_at_star = 0.0;
    double grid_step = 0.01;
};

/// beta* = argmax over the grid of GM(beta) = sqrt(TPR*TNR), ties broken
/// toward the largest beta. Preconditions as roc().
Calibration select_beta(std::span<const double> scores,
                        std::span<const std::uint8_t> truth, double grid_step);

/// Columns beta,fpr,tpr.
void write_roc_csv(const RocCurve& curve, const std::filesystem::path& path);

}  // namespace vep
