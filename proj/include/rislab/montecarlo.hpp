#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rislab/channel.hpp"
#include "rislab/rng.hpp"

namespace rislab {

/// Linear SNR points (rho = P / sigma^2) and the target rate R in bits per channel use.
class SnrGrid {
public:
    SnrGrid(std::vector<double> rho_values, double rate);
    static SnrGrid from_db(std::span<const double> snr_db, double rate);

    const std::vector<double>& rho() const noexcept { return rho_; }
    double rate() const noexcept { return rate_; }
    std::size_t size() const noexcept { return rho_.size(); }

private:
    std::vector<double> rho_;
    double rate_;
};

double db_to_linear(double db) noexcept;

struct WilsonInterval {
    double low;
    double high;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for `successes` out of `trials` Bernoulli draws.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

struct OutageEstimate {
    double rho = 0.0;
    double p_hat = 0.0;
    std::uint64_t outages = 0;
    std::uint64_t trials = 0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    RngSpec seed;

    double half_width() const noexcept { return 0.5 * (ci_high - ci_low); }
};

struct RunOptions {
    /// OpenMP worker count; 0 keeps the runtime default.
    int workers = 0;
};

/// Trials are processed in fixed blocks of this many indices; the reduction
/// runs over blocks in index order, so results never depend on scheduling.
inline constexpr std::uint64_t kTrialBlock = 4096;

/// Fraction of trials whose slot mutual information falls below grid.rate(),
/// one estimate per SNR point. Every SNR point reuses the same channel draws.
std::vector<OutageEstimate> estimate_outage(const ChannelDims& dims, const SchemeConfig& config,
                                            const SnrGrid& grid, std::uint64_t trials, RngSpec rng,
                                            RunOptions options = {});

/// Several schemes over the same draws (common random numbers). Element c of the
/// result equals estimate_outage(dims, configs[c], ...) exactly.
std::vector<std::vector<OutageEstimate>> estimate_outage_many(const ChannelDims& dims,
                                                              std::span<const SchemeConfig> configs,
                                                              const SnrGrid& grid, std::uint64_t trials,
                                                              RngSpec rng, RunOptions options = {});

namespace serial {

/// Reference implementation: one thread, public channel API per trial
/// (draw_channel, build_reflection, Cholesky log-det). Kept for testing the
/// parallel kernel and for benchmarking against it.
std::vector<OutageEstimate> estimate_outage(const ChannelDims& dims, const SchemeConfig& config,
                                            const SnrGrid& grid, std::uint64_t trials, RngSpec rng);

}  // namespace serial

struct CorrelationEstimate {
    double coefficient = 0.0;
    /// Large-sample approximation (1 - r^2) / sqrt(n).
    double standard_error = 0.0;
    std::uint64_t trials = 0;
    RngSpec seed;
};

/// Sample Pearson correlation of the FR sub-slot gains W_a = |H_a|^2 and W_b = |H_b|^2
/// on a SISO link. Sub-slots are zero-based and must differ.
CorrelationEstimate estimate_correlation(const ChannelDims& dims, const PartitionPlan& plan, int slot_a,
                                         int slot_b, std::uint64_t trials, RngSpec rng,
                                         RunOptions options = {});

/// Outage of the correlated-Rayleigh surrogate: H_1 = s X_1 and
/// H_k = s (sqrt(1 - zeta) X_k + sqrt(zeta) X_1), with s^2 = variance and X_k ~ CN(0, 1).
std::vector<OutageEstimate> estimate_surrogate_outage(double variance, double zeta, int k_parts,
                                                      const SnrGrid& grid, std::uint64_t trials,
                                                      RngSpec rng, RunOptions options = {});

struct SlopePoint {
    double snr_db = 0.0;
    OutageEstimate estimate;
    /// p_hat > 10 / trials, i.e. at least ten observed outage events.
    bool valid = false;
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// Root-mean-square residual of the fit over valid points.
    double residual_rms = 0.0;
    std::vector<SlopePoint> points;
};

/// Least-squares slope of -log10(p_hat) against log10(rho) over `snr_db`.
/// `trials` holds one count per point, or a single count; with a single count and an
/// increasing window every point reuses the same draws.
SlopeFit estimate_dmt_slope(const ChannelDims& dims, const SchemeConfig& config, double rate,
                            std::span<const double> snr_db, std::span<const std::uint64_t> trials,
                            RngSpec rng, RunOptions options = {});

}  // namespace rislab
