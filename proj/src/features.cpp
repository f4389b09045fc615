#include "vep/features.hpp"

#include <string>

namespace vep {

void validate(const FeatureSpec& spec) {
    if (spec.horizon < 1) throw DataError("horizon h must be >= 1");
}

std::size_t SupervisedSet::positive_count() const {
    std::size_t positives = 0;
    for (auto y : targets) positives += y;
    return positives;
}

SupervisedSet build(const VoltageSeries& series, const EventSeries& events,
                    const FeatureSpec& spec) {
    validate(spec);
    if (events.labels.size() != series.size())
        throw DataError("series and event labels are not aligned for bus " +
                        std::to_string(series.bus_id));

    const std::size_t n = series.size();
    const std::size_t overhead = spec.horizon + spec.delay + spec.lag;
    if (n <= overhead)
        throw DataError("series too short: " + std::to_string(n) + " samples, need at least " +
                        std::to_string(overhead + 1));

    SupervisedSet set;
    set.bus_id = series.bus_id;
    set.dim = spec.window();
    const std::size_t count = n - overhead;
    set.inputs.reserve(count * set.dim);
    set.targets.reserve(count);
    set.anchor_times.reserve(count);

    // anchors t in [d+L, N-1-h]; window (x[t-d-L], ..., x[t-d]) oldest first
    for (std::size_t t = spec.delay + spec.lag; t + spec.horizon < n; ++t) {
        const std::size_t first = t - spec.delay - spec.lag;
        for (std::size_t j = 0; j <= spec.lag; ++j) set.inputs.push_back(series.values[first + j]);
        set.targets.push_back(events.labels[t + spec.horizon]);
        set.anchor_times.push_back(series.timestamps[t]);
    }
    return set;
}

std::vector<SupervisedSet> decompose(const NetworkDataset& dataset,
                                     const VoltageBounds& bounds,
                                     const FeatureSpec& spec, EventKind kind) {
    validate(dataset);
    std::vector<SupervisedSet> sets;
    sets.reserve(dataset.buses.size());
    for (const auto& bus : dataset.buses)
        sets.push_back(build(bus, label_events(bus, bounds, kind), spec));
    return sets;
}

}  // namespace vep
