#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vep/labeling.hpp"
#include "vep/series.hpp"

namespace vep {

/// Window geometry: each example pairs the L+1 values (x[t-d-L], ..., x[t-d]),
/// oldest first, with the event label at t+h.
struct FeatureSpec {
    std::size_t lag = 1;      // L
    std::size_t delay = 0;    // d
    std::size_t horizon = 4;  // h

    std::size_t window() const { return lag + 1; }
};

void validate(const FeatureSpec& spec);

/// Supervised examples for one bus, chronological, stored row-major.
struct SupervisedSet {
    int bus_id = 0;
    std::size_t dim = 0;
    std::vector<double> inputs;  // size() == n() * dim
    std::vector<std::uint8_t> targets;
    std::vector<TimePoint> anchor_times;

    std::size_t n() const { return targets.size(); }
    std::span<const double> input(std::size_t i) const {
        return {inputs.data() + i * dim, dim};
    }
    std::size_t positive_count() const;
};

/// Enumerates every anchor t with d+L <= t <= N-1-h. Throws DataError
/// (reporting the minimum required length) when N <= h+d+L.
SupervisedSet build(const VoltageSeries& series, const EventSeries& events,
                    const FeatureSpec& spec);

/// Per-bus decomposition: one independent SupervisedSet per bus, each built
/// from that bus's own series and labels only.
std::vector<SupervisedSet> decompose(const NetworkDataset& dataset,
                                     const VoltageBounds& bounds,
                                     const FeatureSpec& spec, EventKind kind);

}  // namespace vep
