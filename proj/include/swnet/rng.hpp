#pragma once

#include <cstdint>
#include <random>

namespace swnet {

using Rng = std::mt19937_64;

// Independent sub-streams are keyed by (seed, stream, index) so that adding
// draws in one stage never shifts the draws of another.
enum class Stream : std::uint64_t {
    placement = 1,
    tie_break = 2,
    consensus = 3,
    antenna_elements = 4,
    target_choice = 5,
};

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index = 0)
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
    return splitmix64(h ^ index);
}

inline Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0)
{
    return Rng{derive_seed(seed, stream, index)};
}

// Uniform double in [0, 1) from the top 53 bits; unlike
// std::uniform_real_distribution this is identical across standard libraries.
inline double uniform01(Rng& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [lo, hi] by rejection sampling.
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi)
{
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0)
        return static_cast<std::int64_t>(rng());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

} // namespace swnet
