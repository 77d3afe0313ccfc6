#pragma once

#include <cstdint>
#include <random>

namespace isogeo {

// Fixed default so every run is reproducible unless a seed is given.
constexpr uint64_t kDefaultSeed = 0xC0FFEE;

using Rng = std::mt19937_64;

// splitmix64 finalizer; enough scrambling to decorrelate derived streams.
inline uint64_t mix_seed(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Independent stream for (base, tag); deterministic in both arguments.
inline uint64_t derive_seed(uint64_t base, uint64_t tag) {
    return mix_seed(base ^ mix_seed(tag));
}

inline Rng make_rng(uint64_t seed) { return Rng(seed); }

}  // namespace isogeo
