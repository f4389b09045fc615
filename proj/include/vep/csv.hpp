#pragma once

#include <filesystem>

#include "vep/series.hpp"

namespace vep {

/// Loads `timestamp,bus_1,...,bus_B` CSV. Timestamps are ISO-8601
/// (YYYY-MM-DD[ T]HH:MM:SS, optional trailing Z) or integer epoch seconds.
/// Throws DataError naming the offending data row on any malformed content.
NetworkDataset load_csv(const std::filesystem::path& path);

/// Writes the loader format back out: epoch-second timestamps, values with
/// shortest round-trip precision, so load_csv(save_csv(d)) == d exactly.
void save_csv(const NetworkDataset& dataset, const std::filesystem::path& path);

}  // namespace vep
