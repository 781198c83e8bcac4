#include <cmath>

#include "montecarlo/kernels.hpp"
#include "rislab/errors.hpp"
#include "rislab/montecarlo.hpp"

namespace rislab {

namespace {

// Running first and second co-moments of (x, y).
struct Moments {
    double n = 0.0;
    double mean_x = 0.0;
    double mean_y = 0.0;
    double m2_x = 0.0;
    double m2_y = 0.0;
    double c_xy = 0.0;

    void push(double x, double y) {
        n += 1.0;
        const double dx = x - mean_x;
        mean_x += dx / n;
        const double dy = y - mean_y;
        mean_y += dy / n;
        m2_x += dx * (x - mean_x);
        m2_y += dy * (y - mean_y);
        c_xy += dx * (y - mean_y);
    }

    void merge(const Moments& o) {
        if (o.n == 0.0) return;
        const double total = n + o.n;
        const double dx = o.mean_x - mean_x;
        const double dy = o.mean_y - mean_y;
        const double w = n * o.n / total;
        m2_x += o.m2_x + dx * dx * w;
        m2_y += o.m2_y + dy * dy * w;
        c_xy += o.c_xy + dx * dy * w;
        mean_x += dx * o.n / total;
        mean_y += dy * o.n / total;
        n = total;
    }
};

}  // namespace

CorrelationEstimate estimate_correlation(const ChannelDims& dims, const PartitionPlan& plan, int slot_a,
                                         int slot_b, std::uint64_t trials, RngSpec rng,
                                         RunOptions options) {
    if (!dims.is_siso()) throw DomainError("gain correlation is defined for SISO links");
    if (plan.elements() != dims.ris()) throw DomainError("partition and channel disagree on Q");
    if (slot_a == slot_b) throw DomainError("correlation needs two distinct sub-slots");
    if (trials < 2) throw DomainError("correlation needs at least two trials");

    const SchemeConfig config = SchemeConfig::flip_reflect(plan);
    const Eigen::VectorXcd coeff_a = build_reflection(config, slot_a).coefficients();
    const Eigen::VectorXcd coeff_b = build_reflection(config, slot_b).coefficients();

    const std::uint64_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
    std::vector<Moments> per_block(static_cast<std::size_t>(blocks));

#pragma omp parallel num_threads(detail::resolve_workers(options.workers))
    {
        ChannelRealization channel;
        Eigen::VectorXcd path(dims.ris());
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
            Moments local;
            const std::uint64_t first = static_cast<std::uint64_t>(b) * kTrialBlock;
            const std::uint64_t last = std::min(trials, first + kTrialBlock);
            for (std::uint64_t t = first; t < last; ++t) {
                TrialStream stream(rng.master_seed, t);
                draw_channel_into(dims, stream, channel);
                path = channel.h.col(0).cwiseProduct(channel.g.row(0).transpose());
                local.push(std::norm(path.cwiseProduct(coeff_a).sum()), std::norm(path.cwiseProduct(coeff_b).sum()));
            }
            per_block[static_cast<std::size_t>(b)] = local;
        }
    }

    Moments total;
    for (const Moments& m : per_block) total.merge(m);
    const double r = total.c_xy / std::sqrt(total.m2_x * total.m2_y);
    return CorrelationEstimate{r, (1.0 - r * r) / std::sqrt(total.n), trials, rng};
}

}  // namespace rislab
