#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rislab/rng.hpp"

namespace rislab {

using cplx = std::complex<double>;
using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr int kDefaultElementCap = 1024;

/// Geometry of the (N, Q, L) link: N transmit antennas, Q RIS elements, L receive antennas.
class ChannelDims {
public:
    ChannelDims(int tx_antennas, int ris_elements, int rx_antennas, int element_cap = kDefaultElementCap);

    int tx() const noexcept { return tx_; }
    int ris() const noexcept { return ris_; }
    int rx() const noexcept { return rx_; }

    /// Sorted (n0, n1, n2) of (N, Q, L).
    const std::array<int, 3>& ordered() const noexcept { return ordered_; }
    int n0() const noexcept { return ordered_[0]; }
    int n1() const noexcept { return ordered_[1]; }
    int n2() const noexcept { return ordered_[2]; }
    /// nu_i = n_i - n0.
    int nu(int i) const { return ordered_.at(static_cast<std::size_t>(i)) - ordered_[0]; }

    bool is_siso() const noexcept { return tx_ == 1 && rx_ == 1; }

    /// Same antennas, different element count (used for sub-surface channels).
    ChannelDims with_elements(int q) const { return ChannelDims(tx_, q, rx_, cap_); }

    friend bool operator==(const ChannelDims& a, const ChannelDims& b) noexcept {
        return a.tx_ == b.tx_ && a.ris_ == b.ris_ && a.rx_ == b.rx_;
    }

private:
    int tx_;
    int ris_;
    int rx_;
    int cap_;
    std::array<int, 3> ordered_;
};

/// K-way split of the Q elements into equal-size disjoint sub-surfaces.
/// Sub-surface and element indices are zero-based.
class PartitionPlan {
public:
    /// Elements k*m .. (k+1)*m - 1 form sub-surface k.
    static PartitionPlan contiguous(int q, int k_parts);

    /// Arbitrary assignment; assignment[i] is the sub-surface of element i.
    PartitionPlan(int k_parts, std::vector<int> assignment);

    int k_parts() const noexcept { return k_parts_; }
    int elements_per_part() const noexcept { return m_; }
    int elements() const noexcept { return static_cast<int>(assignment_.size()); }
    int part_of(int element) const { return assignment_.at(static_cast<std::size_t>(element)); }
    std::span<const int> assignment() const noexcept { return assignment_; }
    std::vector<int> members(int part) const;

    friend bool operator==(const PartitionPlan&, const PartitionPlan&) = default;

private:
    int k_parts_;
    int m_;
    std::vector<int> assignment_;
};

enum class SchemeKind { PR, AR, FR, PB };

std::string_view to_string(SchemeKind kind) noexcept;
std::optional<SchemeKind> parse_scheme(std::string_view text) noexcept;

/// Reflection scheme plus its partition. PR and PB always use a single part.
class SchemeConfig {
public:
    static SchemeConfig pure_reflect(int q);
    static SchemeConfig activate_reflect(PartitionPlan plan);
    static SchemeConfig flip_reflect(PartitionPlan plan);
    static SchemeConfig passive_beamforming(int q);
    /// Contiguous partition of q elements into k parts for AR/FR; k must be 1 for PR/PB.
    static SchemeConfig make(SchemeKind kind, int q, int k_parts);

    SchemeKind kind() const noexcept { return kind_; }
    const PartitionPlan& plan() const noexcept { return plan_; }
    int sub_slots() const noexcept { return plan_.k_parts(); }

private:
    SchemeConfig(SchemeKind kind, PartitionPlan plan) : kind_(kind), plan_(std::move(plan)) {}

    SchemeKind kind_;
    PartitionPlan plan_;
};

/// One block-fading draw: h is Q x N (Tx -> RIS), g is L x Q (RIS -> Rx).
struct ChannelRealization {
    CMatrix h;
    CMatrix g;
};

/// Per-element amplitude and phase of one sub-slot configuration.
struct ReflectionState {
    std::vector<double> amplitudes;
    std::vector<double> phases;

    /// a_i * exp(j phi_i) for every element.
    Eigen::VectorXcd coefficients() const;
};

ChannelRealization draw_channel(const ChannelDims& dims, TrialStream& stream);

/// Overwrites `out` in place; same sampling order as draw_channel.
void draw_channel_into(const ChannelDims& dims, TrialStream& stream, ChannelRealization& out);

/// Reflection state of sub-slot k (zero-based, 0 <= k < K).
/// `realization` is needed only for PB, which is defined for SISO links only.
ReflectionState build_reflection(const SchemeConfig& config, int sub_slot,
                                 const ChannelRealization* realization = nullptr);

/// G * diag(a_i e^{j phi_i}) * H.
CMatrix effective_channel(const ChannelRealization& realization, const ReflectionState& state);

/// log2 det(I + (rho/n) eff eff^H) via Cholesky of the Hermitian positive-definite matrix.
double mutual_information_subslot(const CMatrix& eff, double rho, int tx_antennas);

/// Slot-averaged mutual information (1/K) sum_k I_k over the scheme's sub-slots.
double slot_mutual_information(const ChannelRealization& realization, const SchemeConfig& config,
                               double rho, int tx_antennas);

}  // namespace rislab
