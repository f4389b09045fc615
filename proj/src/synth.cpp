#include "vep/synth.hpp"

#include <cmath>
#include <string>

#include "vep/rng.hpp"

namespace vep {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
constexpr double kSurgeExitProb = 0.04;
constexpr double kDiurnalPeriod = 96.0;  // samples per day at 15-min spacing
}  // namespace

NetworkDataset generate(const SynthSpec& spec) {
    if (spec.n_buses < 1) throw DataError("n_buses must be >= 1");
    if (spec.n_samples < 1) throw DataError("n_samples must be >= 1");
    if (spec.noise_std < 0) throw DataError("noise_std must be >= 0");
    if (spec.wind_surge_rate < 0 || spec.wind_surge_rate > 1)
        throw DataError("wind_surge_rate must lie in [0, 1]");
    if (spec.step_seconds <= 0) throw DataError("step_seconds must be positive");

    NetworkDataset dataset;
    dataset.buses.reserve(static_cast<std::size_t>(spec.n_buses));

    std::vector<TimePoint> axis(spec.n_samples);
    for (std::size_t t = 0; t < spec.n_samples; ++t)
        axis[t] = spec.start_time + static_cast<TimePoint>(t) * spec.step_seconds;

    for (int b = 0; b < spec.n_buses; ++b) {
        auto rng = Rng::stream(spec.seed, 0x53594e54ULL, static_cast<std::uint64_t>(b));
        VoltageSeries series{b + 1, axis, std::vector<double>(spec.n_samples)};
        const double level = spec.base_level + spec.per_bus_offset * b;
        bool surging = false;
        for (std::size_t t = 0; t < spec.n_samples; ++t) {
            const double u = rng.next_double();
            surging = surging ? (u >= kSurgeExitProb) : (u < spec.wind_surge_rate);
            const double diurnal =
                spec.diurnal_amplitude *
                std::sin(kTwoPi * static_cast<double>(t) / kDiurnalPeriod);
            const double noise = spec.noise_std * rng.next_gaussian();
            series.values[t] = level + diurnal + noise +
                               (surging ? spec.wind_surge_magnitude : 0.0);
        }
        dataset.buses.push_back(std::move(series));
    }
    validate(dataset);
    return dataset;
}

}  // namespace vep
