#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "vep/types.hpp"

namespace vep {

/// Voltage magnitude samples (p.u.) for one bus. Timestamps strictly
/// increasing, values finite and inside the (0, 2) p.u. sanity band.
struct VoltageSeries {
    int bus_id = 0;
    std::vector<TimePoint> timestamps;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

/// Throws DataError if a series invariant is violated.
void validate(const VoltageSeries& series);

/// B bus series sharing one timestamp axis.
struct NetworkDataset {
    std::vector<VoltageSeries> buses;

    std::size_t bus_count() const { return buses.size(); }
    std::size_t sample_count() const { return buses.empty() ? 0 : buses.front().size(); }
};

/// Throws DataError unless all member series are valid and share timestamps.
void validate(const NetworkDataset& dataset);

struct SplitSpec {
    double train_fraction = 0.75;
};

/// Chronological split: first floor(train_fraction * N) samples ordered
/// before the remainder, per-bus alignment preserved. Throws DataError when
/// either partition would be empty.
std::pair<NetworkDataset, NetworkDataset> split(const NetworkDataset& dataset,
                                                const SplitSpec& spec);

}  // namespace vep
