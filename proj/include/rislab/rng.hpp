#pragma once

#include <complex>
#include <cstdint>
#include <limits>

#include <boost/random/normal_distribution.hpp>

namespace rislab {

/// Seed provenance for a Monte Carlo run. Results are a pure function of
/// (master_seed, trial count); trial i always reads stream (master_seed, i).
struct RngSpec {
    std::uint64_t master_seed = 0;

    friend bool operator==(const RngSpec&, const RngSpec&) = default;
};

/// Counter-based substream: xoshiro256** keyed by (master seed, trial index).
///
/// Constructing a stream is a handful of integer mixes, so every trial owns
/// a fresh generator and no state is shared between workers.
class TrialStream {
public:
    using result_type = std::uint64_t;

    TrialStream(std::uint64_t master_seed, std::uint64_t trial_index) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Standard normal variate.
    double normal() { return normal_(*this); }

    /// Circularly-symmetric complex Gaussian, zero mean, unit variance.
    std::complex<double> complex_normal() {
        constexpr double kHalfSqrt = 0.70710678118654752440;
        const double re = normal();
        const double im = normal();
        return {kHalfSqrt * re, kHalfSqrt * im};
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
    boost::random::normal_distribution<double> normal_;
};

/// SplitMix64 finaliser; bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace rislab
