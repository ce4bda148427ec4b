#pragma once

#include <cstdint>
#include <limits>

namespace netspec {

/// SplitMix64 finalizer. This is the published mixing function used for every
/// seed derivation in the project; changing it changes every golden file.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for replicate `index` of an ensemble started from `base_seed`.
constexpr std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint64_t index) noexcept
{
    return mix64(mix64(base_seed) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

/// Counter-based 64-bit generator: output i of stream s under key k is
/// mix64(key(k, s) + i * golden). Streams never share state, so a caller can
/// hand independent streams to independent tasks and stay reproducible.
///
/// Generator version 1; satisfies UniformRandomBitGenerator.
class CounterRng {
public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_(mix64(seed ^ mix64(stream ^ 0x5851f42d4c957f2dULL)))
    {
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        ++counter_;
        return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace netspec
