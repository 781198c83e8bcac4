#include "rislab/rng.hpp"

namespace rislab {

namespace {
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

TrialStream::TrialStream(std::uint64_t master_seed, std::uint64_t trial_index) noexcept {
    // Each trial owns four consecutive counters of a Weyl sequence keyed by
    // the master seed; mix64 is a bijection, so no two state words coincide.
    std::uint64_t counter = mix64(master_seed ^ 0x5851F42D4C957F2DULL) + 4 * trial_index * kGoldenGamma;
    for (auto& word : s_) {
        counter += kGoldenGamma;
        word = mix64(counter);
    }
}

}  // namespace rislab
