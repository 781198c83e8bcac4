#include "rislab/dmt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

#include "rislab/errors.hpp"

namespace rislab {

namespace {

// Rayleigh product channel DMT at integer r for the sorted triple n0 <= n1 <= n2.
int product_channel_d(int n0, int n1, int n2, int r) {
    const int excess = std::max(0, n0 + n1 - n2 - r);
    return (n0 - r) * (n1 - r) - (excess * excess) / 4;
}

DmtCurve pr_curve(int a, int b, int c, std::string label) {
    std::array<int, 3> n{a, b, c};
    std::sort(n.begin(), n.end());
    DmtCurve curve{std::move(label), {}};
    for (int r = 0; r <= n[0]; ++r) curve.vertices.push_back({r, product_channel_d(n[0], n[1], n[2], r)});
    return curve;
}

// Point-to-point N x L Rayleigh DMT (N - r)(L - r).
DmtCurve mimo_curve(int a, int b) {
    DmtCurve curve;
    for (int r = 0; r <= std::min(a, b); ++r) curve.vertices.push_back({r, (a - r) * (b - r)});
    return curve;
}

std::string dims_label(const ChannelDims& dims) {
    return "(" + std::to_string(dims.tx()) + "," + std::to_string(dims.ris()) + "," + std::to_string(dims.rx()) + ")";
}

void check_plan(const ChannelDims& dims, const PartitionPlan& plan) {
    if (plan.elements() != dims.ris()) throw DomainError("partition and channel disagree on Q");
}

}  // namespace

int DmtCurve::at(int r) const {
    for (const DmtVertex& v : vertices) {
        if (v.r == r) return v.d;
    }
    return 0;
}

DmtCurve dmt_pr(const ChannelDims& dims) {
    return pr_curve(dims.tx(), dims.ris(), dims.rx(), "PR " + dims_label(dims));
}

DmtCurve dmt_ar(const ChannelDims& dims, const PartitionPlan& plan) {
    check_plan(dims, plan);
    const int k = plan.k_parts();
    DmtCurve curve = pr_curve(dims.tx(), plan.elements_per_part(), dims.rx(),
                              "AR " + dims_label(dims) + " K=" + std::to_string(k));
    for (DmtVertex& v : curve.vertices) v.d *= k;
    return curve;
}

DmtCurve dmt_fr_lower_bound(const ChannelDims& dims, const PartitionPlan& plan) {
    const DmtCurve ar = dmt_ar(dims, plan);
    const DmtCurve pr = dmt_pr(dims);
    DmtCurve curve{"FR-LB " + dims_label(dims) + " K=" + std::to_string(plan.k_parts()), {}};
    for (int r = 0; r <= dims.n0(); ++r) curve.vertices.push_back({r, std::max(ar.at(r), pr.at(r))});
    return curve;
}

DmtCurve dmt_cutset(const ChannelDims& dims) {
    const DmtCurve first = mimo_curve(dims.tx(), dims.ris());
    const DmtCurve second = mimo_curve(dims.ris(), dims.rx());
    DmtCurve curve{"cut-set " + dims_label(dims), {}};
    for (int r = 0; r <= dims.n0(); ++r) curve.vertices.push_back({r, std::min(first.at(r), second.at(r))});
    return curve;
}

AsymptoticSummary cutset_summary(const ChannelDims& dims, double rate) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw DomainError("target rate must be finite and >= 0");
    AsymptoticSummary s;
    const int n = dims.tx();
    const int l = dims.rx();
    const int q = dims.ris();
    s.d_max = std::min(n, l) * q;
    s.r_max = dims.n0();
    if (dims.is_siso()) s.coding_gain = std::expm1(rate * std::log(2.0)) / q;
    for (int m = std::min(n, l); m <= std::abs(n - l) + 1; ++m) {
        if (m >= 1 && q % m == 0) s.partition_window.push_back(m);
    }
    return s;
}

const char* to_string(PartitionVerdict v) noexcept {
    switch (v) {
        case PartitionVerdict::BothExtremes: return "both";
        case PartitionVerdict::DiversityOnly: return "d_max only";
        case PartitionVerdict::MultiplexingOnly: return "r_max only";
        case PartitionVerdict::Neither: return "neither";
    }
    return "neither";
}

PartitionVerdict check_partition_condition(const ChannelDims& dims, int m) {
    if (m < 1 || dims.ris() % m != 0) throw DomainError("m must divide Q");
    const int n = dims.tx();
    const int l = dims.rx();
    // r_max = min{N, Q, L}; with Q < min{N, L} only the whole surface keeps it.
    const bool reaches_r = m >= dims.n0();
    const bool reaches_d = m <= std::abs(n - l) + 1;
    if (reaches_r && reaches_d) return PartitionVerdict::BothExtremes;
    if (reaches_r) return PartitionVerdict::MultiplexingOnly;
    if (reaches_d) return PartitionVerdict::DiversityOnly;
    return PartitionVerdict::Neither;
}

}  // namespace rislab
