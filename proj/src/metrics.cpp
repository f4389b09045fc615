#include "vep/metrics.hpp"

#include <cmath>

#include "vep/types.hpp"

namespace vep {

ConfusionMatrix confusion(std::span<const std::uint8_t> pred,
                          std::span<const std::uint8_t> truth) {
    if (pred.size() != truth.size())
        throw DataError("confusion: prediction and truth lengths differ");
    if (pred.empty()) throw DataError("confusion: empty input");

    ConfusionMatrix cm;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (truth[i]) {
            ++(pred[i] ? cm.tp : cm.fn);
        } else {
            ++(pred[i] ? cm.fp : cm.tn);
        }
    }
    return cm;
}

MetricReport report(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw DataError("metric report over an empty confusion matrix");

    MetricReport r;
    r.cm = cm;
    const auto tp = static_cast<double>(cm.tp);
    const auto fp = static_cast<double>(cm.fp);
    const auto fn = static_cast<double>(cm.fn);
    const auto tn = static_cast<double>(cm.tn);

    r.acc = (tp + tn) / static_cast<double>(cm.total());

    if (cm.tp + cm.fn > 0) {
        r.tpr = tp / (tp + fn);
        r.fnr = fn / (fn + tp);
    } else {
        r.degenerate.tpr = true;
    }
    if (cm.tn + cm.fp > 0) {
        r.tnr = tn / (tn + fp);
        r.fpr = fp / (tn + fp);
    } else {
        r.degenerate.tnr = true;
    }
    r.gm = std::sqrt(r.tpr * r.tnr);

    const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
    if (denom > 0) {
        r.mcc = (tp * tn - fp * fn) / std::sqrt(denom);
    } else {
        r.degenerate.mcc = true;
    }
    r.nmcc = (r.mcc + 1.0) / 2.0;
    return r;
}

}  // namespace vep
