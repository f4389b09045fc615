#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "vep/calibration.hpp"
#include "vep/metrics.hpp"
#include "vep/models.hpp"

namespace vep {

/// One evaluated (bus, model, bound) cell.
struct RunResult {
    int bus_id = 0;
    ModelKind model = ModelKind::cart;
    EventKind kind = EventKind::over_bound;
    double bound = 0;
    Calibration calibration;
    MetricReport metrics;
};

/// Five-number nMCC summary of one model across buses.
struct DistributionSummary {
    ModelKind model = ModelKind::cart;
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
    std::size_t bus_count = 0;
};

/// Aligned text table for one bus and bound: one column per model in
/// first-appearance order, rows beta*, TP, FP, FN, TN, TPR, FPR, GM, ACC,
/// nMCC. Counts exact, rates to 2 decimals, degenerate cells marked "(deg)".
std::string metric_table(std::span<const RunResult> results);

/// nMCC five-number summaries per model, sorted by descending median.
/// Quartiles by Tukey median-of-halves. Throws DataError when some model is
/// missing a bus that another model has.
std::vector<DistributionSummary> rank_models(std::span<const RunResult> results);

std::string ranking_table(std::span<const DistributionSummary> summaries);

/// JSON Lines, one record per RunResult, fixed key set:
/// bus, model, bound, beta_star, tp, fp, fn, tn, acc, tpr, fpr, tnr, fnr,
/// gm, auc, mcc, nmcc.
void write_results(std::span<const RunResult> results, const std::filesystem::path& path);
std::vector<RunResult> load_results(const std::filesystem::path& path);

}  // namespace vep
