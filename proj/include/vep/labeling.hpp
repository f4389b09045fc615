#pragma once

#include <cstdint>
#include <vector>

#include "vep/series.hpp"

namespace vep {

/// Operator-set voltage band. lower < upper, both finite and positive.
struct VoltageBounds {
    double upper = 1.05;
    double lower = 0.95;
};

void validate(const VoltageBounds& bounds);

/// Binary excursion labels aligned to the source series timestamps.
struct EventSeries {
    int bus_id = 0;
    EventKind kind = EventKind::over_bound;
    std::vector<std::uint8_t> labels;

    std::size_t size() const { return labels.size(); }
};

/// labels[t] = 1 iff values[t] > bounds.upper (strict).
EventSeries label_over(const VoltageSeries& series, const VoltageBounds& bounds);

/// labels[t] = 1 iff values[t] < bounds.lower (strict).
EventSeries label_under(const VoltageSeries& series, const VoltageBounds& bounds);

EventSeries label_events(const VoltageSeries& series, const VoltageBounds& bounds,
                         EventKind kind);

/// count(labels == 1) / length. Throws DataError on an empty series.
double positive_ratio(const EventSeries& events);

}  // namespace vep
