#include <algorithm>
#include <string>

#include "rislab/channel.hpp"
#include "rislab/errors.hpp"

namespace rislab {

ChannelDims::ChannelDims(int tx_antennas, int ris_elements, int rx_antennas, int element_cap)
    : tx_(tx_antennas), ris_(ris_elements), rx_(rx_antennas), cap_(element_cap),
      ordered_{tx_antennas, ris_elements, rx_antennas} {
    if (tx_ < 1 || ris_ < 1 || rx_ < 1) {
        throw DomainError("channel dimensions must be positive, got (" + std::to_string(tx_) + "," +
                          std::to_string(ris_) + "," + std::to_string(rx_) + ")");
    }
    if (ris_ > cap_) {
        throw DomainError("RIS element count " + std::to_string(ris_) + " exceeds cap " +
                          std::to_string(cap_));
    }
    std::sort(ordered_.begin(), ordered_.end());
}

PartitionPlan PartitionPlan::contiguous(int q, int k_parts) {
    if (q < 1 || k_parts < 1 || q % k_parts != 0) {
        throw DomainError("partition needs K dividing Q, got Q=" + std::to_string(q) +
                          " K=" + std::to_string(k_parts));
    }
    const int m = q / k_parts;
    std::vector<int> assignment(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) assignment[static_cast<std::size_t>(i)] = i / m;
    return PartitionPlan(k_parts, std::move(assignment));
}

PartitionPlan::PartitionPlan(int k_parts, std::vector<int> assignment)
    : k_parts_(k_parts), m_(0), assignment_(std::move(assignment)) {
    const int q = static_cast<int>(assignment_.size());
    if (k_parts_ < 1 || q < 1 || q % k_parts_ != 0) {
        throw DomainError("partition needs K dividing Q, got Q=" + std::to_string(q) +
                          " K=" + std::to_string(k_parts_));
    }
    m_ = q / k_parts_;
    std::vector<int> counts(static_cast<std::size_t>(k_parts_), 0);
    for (int part : assignment_) {
        if (part < 0 || part >= k_parts_) {
            throw DomainError("sub-surface index " + std::to_string(part) + " outside [0," +
                              std::to_string(k_parts_) + ")");
        }
        ++counts[static_cast<std::size_t>(part)];
    }
    for (int c : counts) {
        if (c != m_) throw DomainError("every sub-surface must hold exactly Q/K elements");
    }
}

std::vector<int> PartitionPlan::members(int part) const {
    if (part < 0 || part >= k_parts_) throw DomainError("sub-surface index out of range");
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int i = 0; i < elements(); ++i) {
        if (assignment_[static_cast<std::size_t>(i)] == part) out.push_back(i);
    }
    return out;
}

std::string_view to_string(SchemeKind kind) noexcept {
    switch (kind) {
        case SchemeKind::PR: return "PR";
        case SchemeKind::AR: return "AR";
        case SchemeKind::FR: return "FR";
        case SchemeKind::PB: return "PB";
    }
    return "?";
}

std::optional<SchemeKind> parse_scheme(std::string_view text) noexcept {
    if (text == "PR" || text == "pr") return SchemeKind::PR;
    if (text == "AR" || text == "ar") return SchemeKind::AR;
    if (text == "FR" || text == "fr") return SchemeKind::FR;
    if (text == "PB" || text == "pb") return SchemeKind::PB;
    return std::nullopt;
}

SchemeConfig SchemeConfig::pure_reflect(int q) {
    return SchemeConfig(SchemeKind::PR, PartitionPlan::contiguous(q, 1));
}

SchemeConfig SchemeConfig::activate_reflect(PartitionPlan plan) {
    return SchemeConfig(SchemeKind::AR, std::move(plan));
}

SchemeConfig SchemeConfig::flip_reflect(PartitionPlan plan) {
    return SchemeConfig(SchemeKind::FR, std::move(plan));
}

SchemeConfig SchemeConfig::passive_beamforming(int q) {
    return SchemeConfig(SchemeKind::PB, PartitionPlan::contiguous(q, 1));
}

SchemeConfig SchemeConfig::make(SchemeKind kind, int q, int k_parts) {
    switch (kind) {
        case SchemeKind::PR:
        case SchemeKind::PB:
            if (k_parts != 1) {
                throw DomainError(std::string(to_string(kind)) + " uses a single partition (K=1)");
            }
            return kind == SchemeKind::PR ? pure_reflect(q) : passive_beamforming(q);
        case SchemeKind::AR: return activate_reflect(PartitionPlan::contiguous(q, k_parts));
        case SchemeKind::FR: return flip_reflect(PartitionPlan::contiguous(q, k_parts));
    }
    throw DomainError("unknown scheme");
}

}  // namespace rislab
