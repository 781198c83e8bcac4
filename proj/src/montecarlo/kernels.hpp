#pragma once

// Per-trial kernels and the block-ordered OpenMP driver shared by the estimators.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include <omp.h>

#include "rislab/channel.hpp"
#include "rislab/montecarlo.hpp"

namespace rislab::detail {

inline int resolve_workers(int requested) {
    return requested > 0 ? requested : omp_get_max_threads();
}

/// Runs trial_fn(trial, workspace, counts) for every trial index, each block of
/// kTrialBlock indices accumulating into its own slice of `outputs` counters.
/// Returns the per-output totals. Integer reduction, so any worker count gives
/// identical totals.
template <class MakeWorkspace, class TrialFn>
std::vector<std::uint64_t> count_blocks(std::uint64_t trials, std::size_t outputs, int workers,
                                        MakeWorkspace make_workspace, TrialFn trial_fn) {
    const std::uint64_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
    std::vector<std::uint64_t> block_counts(static_cast<std::size_t>(blocks) * outputs, 0);

#pragma omp parallel num_threads(resolve_workers(workers))
    {
        auto workspace = make_workspace();
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
            std::uint64_t* counts = block_counts.data() + static_cast<std::size_t>(b) * outputs;
            const std::uint64_t first = static_cast<std::uint64_t>(b) * kTrialBlock;
            const std::uint64_t last = std::min(trials, first + kTrialBlock);
            for (std::uint64_t t = first; t < last; ++t) trial_fn(t, workspace, counts);
        }
    }

    std::vector<std::uint64_t> totals(outputs, 0);
    for (std::uint64_t b = 0; b < blocks; ++b) {
        for (std::size_t o = 0; o < outputs; ++o) totals[o] += block_counts[b * outputs + o];
    }
    return totals;
}

/// Outage indicator for a set of schemes over one SNR grid.
class OutageKernel {
public:
    struct Workspace {
        ChannelRealization channel;
        CMatrix scaled_h;
        CMatrix eff;
        CMatrix gram;
        Eigen::VectorXcd pb_coefficients;
        std::vector<double> products;
    };

    OutageKernel(const ChannelDims& dims, std::span<const SchemeConfig> configs, const SnrGrid& grid);

    std::size_t outputs() const noexcept { return configs_.size() * rho_.size(); }
    Workspace make_workspace() const;

    /// Adds one to counts[c * rho_count + r] whenever scheme c is in outage at SNR point r.
    void run_trial(std::uint64_t master_seed, std::uint64_t trial, Workspace& ws,
                   std::uint64_t* counts) const;

private:
    struct PreparedScheme {
        SchemeKind kind;
        std::vector<Eigen::VectorXcd> coefficients;  // one per sub-slot; empty for PB
        double threshold;                            // 2^(R K)
    };

    void accumulate_subslot(Workspace& ws) const;

    ChannelDims dims_;
    std::vector<PreparedScheme> configs_;
    std::vector<double> rho_;
    std::vector<double> snr_scale_;  // rho / N
};

/// Trial-level outage counts turned into estimates with Wilson intervals.
std::vector<OutageEstimate> to_estimates(std::span<const std::uint64_t> counts, const SnrGrid& grid,
                                         std::uint64_t trials, RngSpec rng);

}  // namespace rislab::detail
