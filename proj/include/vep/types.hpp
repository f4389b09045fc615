#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vep {

/// Epoch seconds. Nominal sample spacing is 15 minutes (900 s).
using TimePoint = std::int64_t;

enum class EventKind { over_bound, under_bound };

inline const char* to_string(EventKind k) {
    return k == EventKind::over_bound ? "ob" : "ub";
}

/// Bad configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad or inconsistent data (CLI exit code 2).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace vep
