#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace mslice {

/// SplitMix64 finalizer. Used to derive independent stream states from
/// (seed, stream index) pairs.
std::uint64_t splitmix64_mix(std::uint64_t x) noexcept;

/// xoshiro256** generator satisfying UniformRandomBitGenerator.
///
/// Streams are keyed by (seed, index): the stream for sample k depends only
/// on the user seed and k, so a Monte Carlo run partitioned across any number
/// of workers draws exactly the same values for every sample.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed, std::uint64_t index = 0) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept;

private:
    std::array<std::uint64_t, 4> s_{};
};

}  // namespace mslice
