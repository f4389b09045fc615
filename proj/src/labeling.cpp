#include "vep/labeling.hpp"

#include <cmath>

namespace vep {

void validate(const VoltageBounds& bounds) {
    if (!std::isfinite(bounds.upper) || !std::isfinite(bounds.lower))
        throw DataError("voltage bounds must be finite");
    if (bounds.lower <= 0 || bounds.upper <= 0)
        throw DataError("voltage bounds must be positive");
    if (!(bounds.lower < bounds.upper))
        throw DataError("lower bound must be below upper bound");
}

EventSeries label_over(const VoltageSeries& series, const VoltageBounds& bounds) {
    validate(bounds);
    EventSeries events{series.bus_id, EventKind::over_bound, {}};
    events.labels.reserve(series.size());
    for (double v : series.values)
        events.labels.push_back(v > bounds.upper ? 1 : 0);
    return events;
}

EventSeries label_under(const VoltageSeries& series, const VoltageBounds& bounds) {
    validate(bounds);
    EventSeries events{series.bus_id, EventKind::under_bound, {}};
    events.labels.reserve(series.size());
    for (double v : series.values)
        events.labels.push_back(v < bounds.lower ? 1 : 0);
    return events;
}

EventSeries label_events(const VoltageSeries& series, const VoltageBounds& bounds,
                         EventKind kind) {
    return kind == EventKind::over_bound ? label_over(series, bounds)
                                         : label_under(series, bounds);
}

double positive_ratio(const EventSeries& events) {
    if (events.labels.empty()) throw DataError("positive_ratio of an empty event series");
    std::size_t positives = 0;
    for (auto y : events.labels) positives += y;
    return static_cast<double>(positives) / static_cast<double>(events.labels.size());
}

}  // namespace vep
