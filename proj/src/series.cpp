#include "vep/series.hpp"

#include <cmath>
#include <string>

namespace vep {

void validate(const VoltageSeries& series) {
    if (series.bus_id <= 0)
        throw DataError("bus id must be positive, got " + std::to_string(series.bus_id));
    if (series.values.size() != series.timestamps.size())
        throw DataError("series length mismatch for bus " + std::to_string(series.bus_id));
    for (std::size_t i = 1; i < series.timestamps.size(); ++i) {
        if (series.timestamps[i] <= series.timestamps[i - 1])
            throw DataError("non-increasing timestamps at row " + std::to_string(i + 1));
    }
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        double v = series.values[i];
        if (!std::isfinite(v) || v <= 0.0 || v >= 2.0)
            throw DataError("value out of (0, 2) p.u. at row " + std::to_string(i + 1) +
                            " for bus " + std::to_string(series.bus_id));
    }
}

void validate(const NetworkDataset& dataset) {
    if (dataset.buses.empty()) throw DataError("dataset has no buses");
    for (const auto& bus : dataset.buses) validate(bus);
    const auto& axis = dataset.buses.front().timestamps;
    for (const auto& bus : dataset.buses) {
        if (bus.timestamps != axis)
            throw DataError("bus " + std::to_string(bus.bus_id) +
                            " does not share the common timestamp axis");
    }
    for (std::size_t i = 0; i < dataset.buses.size(); ++i)
        for (std::size_t j = i + 1; j < dataset.buses.size(); ++j)
            if (dataset.buses[i].bus_id == dataset.buses[j].bus_id)
                throw DataError("duplicate bus id " +
                                std::to_string(dataset.buses[i].bus_id));
}

std::pair<NetworkDataset, NetworkDataset> split(const NetworkDataset& dataset,
                                                const SplitSpec& spec) {
    if (dataset.buses.empty() || dataset.sample_count() == 0)
        throw DataError("cannot split an empty dataset");
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw DataError("train_fraction must lie in (0, 1)");

    const std::size_t n = dataset.sample_count();
    const auto n_train =
        static_cast<std::size_t>(std::floor(spec.train_fraction * static_cast<double>(n)));
    if (n_train == 0 || n_train == n)
        throw DataError("empty partition: train_fraction " +
                        std::to_string(spec.train_fraction) + " of " + std::to_string(n) +
                        " samples");

    NetworkDataset train, test;
    train.buses.reserve(dataset.buses.size());
    test.buses.reserve(dataset.buses.size());
    for (const auto& bus : dataset.buses) {
        VoltageSeries head{bus.bus_id,
                           {bus.timestamps.begin(), bus.timestamps.begin() + n_train},
                           {bus.values.begin(), bus.values.begin() + n_train}};
        VoltageSeries tail{bus.bus_id,
                           {bus.timestamps.begin() + n_train, bus.timestamps.end()},
                           {bus.values.begin() + n_train, bus.values.end()}};
        train.buses.push_back(std::move(head));
        test.buses.push_back(std::move(tail));
    }
    return {std::move(train), std::move(test)};
}

}  // namespace vep
