#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace bellsets::rng {

/// Recorded in every report. Streams come from std::mt19937_64 (bit-exact per
/// the C++ standard); sub-seeds from splitmix64 over (seed, label, index).
inline constexpr std::string_view kGeneratorName = "mt19937_64/splitmix64-subseed";

inline std::uint64_t splitmix64_step(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (char c : text) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ull;
    }
    return hash;
}

/// Pure function of (seed, label, index): component sampling order never
/// affects results.
inline std::uint64_t subseed(std::uint64_t seed, std::string_view label, std::uint64_t index = 0) {
    std::uint64_t state = seed ^ fnv1a64(label);
    splitmix64_step(state);
    state ^= 0x9E3779B97F4A7C15ull * (index + 1);
    return splitmix64_step(state);
}

/// 53-bit uniform in [0, 1); identical on every platform for a given stream.
inline double unit_from_bits(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

template <typename Engine>
double next_unit(Engine& engine) {
    return unit_from_bits(static_cast<std::uint64_t>(engine()));
}

inline std::mt19937_64 engine(std::uint64_t seed, std::string_view label, std::uint64_t index = 0) {
    return std::mt19937_64(subseed(seed, label, index));
}

/// Tiny stateful splitmix64 stream for per-trial draws.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t operator()() { return splitmix64_step(state); }
    double unit() { return unit_from_bits(splitmix64_step(state)); }
};

}  // namespace bellsets::rng
