#pragma once

#include <cmath>
#include <cstdint>

namespace vep {

/// Deterministic stream RNG (splitmix64 core). Streams are derived from a
/// root seed plus stream tags, so independent tasks draw from independent
/// sequences regardless of scheduling order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        // boost::hash_combine-style mixing, 64-bit constants
        a ^= b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2);
        return splitmix(a);
    }

    /// Substream for (seed, tag...) tuples.
    template <typename... Tags>
    static Rng stream(std::uint64_t seed, Tags... tags) {
        std::uint64_t s = splitmix(seed);
        ((s = mix(s, static_cast<std::uint64_t>(tags))), ...);
        return Rng(s);
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return finalize(state_);
    }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        return n == 0 ? 0 : next_u64() % n;
    }

    /// Standard normal via Box-Muller (two uniforms per draw).
    double next_gaussian() {
        double u1 = next_double();
        double u2 = next_double();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        return finalize(x);
    }

    static std::uint64_t finalize(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace vep
