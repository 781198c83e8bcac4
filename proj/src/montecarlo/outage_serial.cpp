#include "montecarlo/kernels.hpp"
#include "rislab/errors.hpp"
#include "rislab/montecarlo.hpp"

namespace rislab::serial {

std::vector<OutageEstimate> estimate_outage(const ChannelDims& dims, const SchemeConfig& config,
                                            const SnrGrid& grid, std::uint64_t trials, RngSpec rng) {
    if (trials == 0) throw DomainError("trials must be >= 1");
    if (config.plan().elements() != dims.ris()) throw DomainError("scheme and channel disagree on Q");

    std::vector<std::uint64_t> counts(grid.size(), 0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        TrialStream stream(rng.master_seed, t);
        const ChannelRealization channel = draw_channel(dims, stream);
        for (std::size_t r = 0; r < grid.size(); ++r) {
            const double mi = slot_mutual_information(channel, config, grid.rho()[r], dims.tx());
            if (mi < grid.rate()) ++counts[r];
        }
    }
    return detail::to_estimates(counts, grid, trials, rng);
}

}  // namespace rislab::serial
