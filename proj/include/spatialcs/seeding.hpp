// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace spatialcs {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// FNV-1a over the tag bytes.
constexpr std::uint64_t hash_tag(std::string_view tag)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Seed for one Monte Carlo work item. Each tuple component is absorbed
/// through a full SplitMix round, so swapping trial and inner index yields
/// a different stream.
constexpr std::uint64_t derive_trial_seed(std::uint64_t base_seed, std::string_view stream_tag,
                                          std::uint64_t trial_index, std::uint64_t inner_index)
{
    std::uint64_t h = mix64(base_seed);
    h = mix64(h ^ hash_tag(stream_tag));
    h = mix64(h ^ (trial_index * 0xD6E8FEB86659FD93ULL));
    h = mix64(h ^ (inner_index * 0xA0761D6478BD642FULL + 1));
    return h;
}

inline Rng make_rng(std::uint64_t seed)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    return Rng(seq);
}

}  // namespace spatialcs
