#include <cmath>

#include "montecarlo/kernels.hpp"
#include "rislab/errors.hpp"
#include "rislab/montecarlo.hpp"

namespace rislab {

SnrGrid::SnrGrid(std::vector<double> rho_values, double rate) : rho_(std::move(rho_values)), rate_(rate) {
    if (rho_.empty()) throw DomainError("SNR grid is empty");
    if (!(rate_ >= 0.0) || !std::isfinite(rate_)) throw DomainError("target rate must be finite and >= 0");
    for (std::size_t i = 0; i < rho_.size(); ++i) {
        if (!(rho_[i] > 0.0) || !std::isfinite(rho_[i])) throw DomainError("SNR values must be positive");
        if (i > 0 && !(rho_[i] > rho_[i - 1])) throw DomainError("SNR values must be strictly increasing");
    }
}

SnrGrid SnrGrid::from_db(std::span<const double> snr_db, double rate) {
    std::vector<double> rho;
    rho.reserve(snr_db.size());
    for (double db : snr_db) rho.push_back(db_to_linear(db));
    return SnrGrid(std::move(rho), rate);
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) throw DomainError("Wilson interval needs at least one trial");
    if (successes > trials) throw DomainError("more successes than trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double radius = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // Exact endpoints at the boundary so ci_low <= p_hat <= ci_high holds in floating point.
    const double low = successes == 0 ? 0.0 : std::min(p, std::max(0.0, center - radius));
    const double high = successes == trials ? 1.0 : std::max(p, std::min(1.0, center + radius));
    return {low, high};
}

std::vector<std::vector<OutageEstimate>> estimate_outage_many(const ChannelDims& dims,
                                                              std::span<const SchemeConfig> configs,
                                                              const SnrGrid& grid, std::uint64_t trials,
                                                              RngSpec rng, RunOptions options) {
    if (trials == 0) throw DomainError("trials must be >= 1");
    const detail::OutageKernel kernel(dims, configs, grid);
    const std::uint64_t seed = rng.master_seed;
    const auto totals = detail::count_blocks(
        trials, kernel.outputs(), options.workers, [&] { return kernel.make_workspace(); },
        [&](std::uint64_t t, detail::OutageKernel::Workspace& ws, std::uint64_t* counts) {
            kernel.run_trial(seed, t, ws, counts);
        });

    std::vector<std::vector<OutageEstimate>> out;
    out.reserve(configs.size());
    for (std::size_t c = 0; c < configs.size(); ++c) {
        out.push_back(detail::to_estimates(std::span(totals).subspan(c * grid.size(), grid.size()), grid,
                                           trials, rng));
    }
    return out;
}

std::vector<OutageEstimate> estimate_outage(const ChannelDims& dims, const SchemeConfig& config,
                                            const SnrGrid& grid, std::uint64_t trials, RngSpec rng,
                                            RunOptions options) {
    return estimate_outage_many(dims, std::span(&config, 1), grid, trials, rng, options).front();
}

std::vector<OutageEstimate> estimate_surrogate_outage(double variance, double zeta, int k_parts,
                                                      const SnrGrid& grid, std::uint64_t trials,
                                                      RngSpec rng, RunOptions options) {
    if (trials == 0) throw DomainError("trials must be >= 1");
    if (!(variance > 0.0)) throw DomainError("surrogate variance must be positive");
    if (!(zeta >= 0.0 && zeta <= 1.0)) throw DomainError("correlation coefficient must lie in [0,1]");
    if (k_parts < 1) throw DomainError("surrogate needs K >= 1");

    const double threshold = std::exp2(grid.rate() * k_parts);
    const double sigma = std::sqrt(variance);
    const double own = std::sqrt(1.0 - zeta);
    const double shared = std::sqrt(zeta);
    const std::vector<double>& rho = grid.rho();
    const std::uint64_t seed = rng.master_seed;

    struct Workspace {
        std::vector<double> gains;
    };
    const auto totals = detail::count_blocks(
        trials, rho.size(), options.workers,
        [&] { return Workspace{std::vector<double>(static_cast<std::size_t>(k_parts))}; },
        [&](std::uint64_t t, Workspace& ws, std::uint64_t* counts) {
            TrialStream stream(seed, t);
            const cplx x1 = stream.complex_normal();
            ws.gains[0] = variance * std::norm(x1);
            for (int k = 1; k < k_parts; ++k) {
                const cplx xk = stream.complex_normal();
                ws.gains[static_cast<std::size_t>(k)] = std::norm(sigma * (own * xk + shared * x1));
            }
            for (std::size_t r = 0; r < rho.size(); ++r) {
                double product = 1.0;
                for (double w : ws.gains) product *= 1.0 + rho[r] * w;
                if (product < threshold) ++counts[r];
            }
        });
    return detail::to_estimates(totals, grid, trials, rng);
}

}  // namespace rislab
