#pragma once

#include <cstdint>
#include <string_view>

namespace hra {

using Seed = std::uint64_t;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic child-seed derivation: every subprocess, trial, and sample
/// draws its randomness from a seed derived from (parent seed, index), so
/// creation order of siblings cannot perturb each other.
inline Seed derive_seed(Seed parent, std::uint64_t index) {
    return splitmix64(splitmix64(parent) ^ (0x632be59bd9b4e019ULL * (index + 1)));
}

inline Seed derive_seed(Seed parent, std::string_view tag) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return splitmix64(splitmix64(parent) ^ h);
}

}  // namespace hra
