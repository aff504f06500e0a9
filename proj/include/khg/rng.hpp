#pragma once

#include <cstdint>

namespace khg {

// Counter-based generator: the SplitMix64 finalizer applied to
// seed + (counter+1) * golden gamma. Draw i of a stream is a pure function
// of (seed, i), so trial ranges can be split across workers without
// changing the sampled values.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Name recorded in sampler output headers so results are attributable.
inline const char* counter_rng_name() { return "splitmix64-counter"; }

} // namespace khg
