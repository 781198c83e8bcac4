#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rislab/channel.hpp"

namespace rislab {

struct DmtVertex {
    int r = 0;
    int d = 0;
    friend bool operator==(const DmtVertex&, const DmtVertex&) = default;
};

/// Diversity-multiplexing tradeoff sampled at integer multiplexing gains 0..r_max;
/// linear interpolation between vertices is implied.
struct DmtCurve {
    std::string label;
    std::vector<DmtVertex> vertices;

    int max_r() const { return vertices.empty() ? 0 : vertices.back().r; }
    /// d at integer r; 0 beyond the curve's last vertex.
    int at(int r) const;
    friend bool operator==(const DmtCurve&, const DmtCurve&) = default;
};

/// Pure-reflect DMT of the (N, Q, L) channel.
DmtCurve dmt_pr(const ChannelDims& dims);

/// Activate-reflect DMT: K times the PR curve of the (N, m, L) channel.
DmtCurve dmt_ar(const ChannelDims& dims, const PartitionPlan& plan);

/// Flip-reflect lower bound: pointwise max of the AR and PR curves out to min(N, Q, L).
DmtCurve dmt_fr_lower_bound(const ChannelDims& dims, const PartitionPlan& plan);

/// Cut-set upper bound min{d_(N,Q)(r), d_(Q,L)(r)} built from the two single-hop curves.
DmtCurve dmt_cutset(const ChannelDims& dims);

struct AsymptoticSummary {
    int d_max = 0;
    int r_max = 0;
    /// (2^R - 1) / Q on SISO links only.
    std::optional<double> coding_gain;
    /// Divisors m of Q with min{N, L} <= m <= |N - L| + 1; often empty.
    std::vector<int> partition_window;
};

AsymptoticSummary cutset_summary(const ChannelDims& dims, double rate);

enum class PartitionVerdict { BothExtremes, DiversityOnly, MultiplexingOnly, Neither };

const char* to_string(PartitionVerdict v) noexcept;

/// Which cut-set extremes an AR partition of size m reaches.
PartitionVerdict check_partition_condition(const ChannelDims& dims, int m);

}  // namespace rislab
