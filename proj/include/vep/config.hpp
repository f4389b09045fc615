#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vep/features.hpp"
#include "vep/models.hpp"
#include "vep/series.hpp"
#include "vep/synth.hpp"

namespace vep {

enum class CalibrateOn { train, test };

/// Shared configuration for all subcommands. Flat key-value file syntax:
/// one `key = value` per line, `#` comments. Keys follow the symbol names:
/// h, L, d, v_upper, v_lower, beta_step, train_fraction, calibrate_on,
/// models, seed, jobs, data, out_dir, and the synth block (n_buses,
/// n_samples, base_level, diurnal_amplitude, noise_std, wind_surge_rate,
/// wind_surge_magnitude, per_bus_offset). Per-model hyperparameters use
/// `<model>.<key>`, e.g. `knn.k = 15`.
struct RunConfig {
    std::filesystem::path data_path = "dataset.csv";
    std::filesystem::path out_dir = "out";
    SynthSpec synth;
    std::optional<double> v_upper = 1.05;
    std::optional<double> v_lower;  // under-bound analysis runs only when set
    FeatureSpec features;           // L=1, d=0, h=4
    SplitSpec split{0.75};
    double beta_step = 0.01;
    CalibrateOn calibrate_on = CalibrateOn::train;
    std::vector<ModelSpec> models;  // declaration order fixes table columns
    std::uint64_t seed = 1;
    int jobs = 0;  // 0 = hardware concurrency

    RunConfig();
};

/// Throws ConfigError on contradictory or out-of-range settings.
void validate(const RunConfig& config);

RunConfig load_config(const std::filesystem::path& path);

/// Applies one `key=value` override on top of a loaded config.
void apply_override(RunConfig& config, const std::string& assignment);

}  // namespace vep
