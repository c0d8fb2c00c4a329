#pragma once

// Seed derivation: every stochastic stage draws from a substream keyed by
// (base seed, tag), never from a shared generator, so results do not depend
// on thread scheduling.

#include <cstdint>
#include <random>

namespace singlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
    return splitmix64(base ^ splitmix64(tag));
}

inline std::mt19937_64 substream(std::uint64_t base, std::uint64_t tag) {
    return std::mt19937_64(derive_seed(base, tag));
}

}  // namespace singlab
