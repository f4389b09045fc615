#pragma once

#include <cstdint>
#include <span>

namespace vep {

struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const { return tp + fp + fn + tn; }
};

ConfusionMatrix confusion(std::span<const std::uint8_t> pred,
                          std::span<const std::uint8_t> truth);

/// Scalar metrics derived from a confusion matrix. A rate whose denominator
/// is zero reports 0 with the matching degeneracy flag set; MCC with a zero
/// denominator factor reports 0 (flagged).
struct MetricReport {
    double acc = 0;
    double tpr = 0;
    double fpr = 0;
    double tnr = 0;
    double fnr = 0;
    double gm = 0;
    double mcc = 0;
    double nmcc = 0;
    double auc = 0;  // supplied by the caller (ROC module), not derivable from counts
    ConfusionMatrix cm;
    double beta = 0;

    struct Degenerate {
        bool tpr = false;  // tp+fn == 0; also covers fnr
        bool tnr = false;  // tn+fp == 0; also covers fpr
        bool mcc = false;  // some denominator factor == 0
        bool any() const { return tpr || tnr || mcc; }
    } degenerate;
};

/// Throws DataError when cm.total() == 0.
MetricReport report(const ConfusionMatrix& cm);

}  // namespace vep
