#include <cmath>
#include <numbers>

#include "rislab/channel.hpp"
#include "rislab/errors.hpp"

namespace rislab {

Eigen::VectorXcd ReflectionState::coefficients() const {
    Eigen::VectorXcd c(static_cast<Eigen::Index>(amplitudes.size()));
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        c[static_cast<Eigen::Index>(i)] = std::polar(amplitudes[i], phases[i]);
    }
    return c;
}

void draw_channel_into(const ChannelDims& dims, TrialStream& stream, ChannelRealization& out) {
    out.h.resize(dims.ris(), dims.tx());
    out.g.resize(dims.rx(), dims.ris());
    cplx* h = out.h.data();
    for (Eigen::Index i = 0; i < out.h.size(); ++i) h[i] = stream.complex_normal();
    cplx* g = out.g.data();
    for (Eigen::Index i = 0; i < out.g.size(); ++i) g[i] = stream.complex_normal();
}

ChannelRealization draw_channel(const ChannelDims& dims, TrialStream& stream) {
    ChannelRealization out;
    draw_channel_into(dims, stream, out);
    return out;
}

ReflectionState build_reflection(const SchemeConfig& config, int sub_slot,
                                 const ChannelRealization* realization) {
    const PartitionPlan& plan = config.plan();
    const int k_parts = plan.k_parts();
    if (sub_slot < 0 || sub_slot >= k_parts) {
        throw DomainError("sub-slot " + std::to_string(sub_slot) + " outside [0," +
                          std::to_string(k_parts) + ")");
    }
    const auto q = static_cast<std::size_t>(plan.elements());
    ReflectionState state{std::vector<double>(q, 1.0), std::vector<double>(q, 0.0)};

    switch (config.kind()) {
        case SchemeKind::PR:
            break;
        case SchemeKind::AR:
            for (std::size_t i = 0; i < q; ++i) {
                state.amplitudes[i] = plan.assignment()[i] == sub_slot ? 1.0 : 0.0;
            }
            break;
        case SchemeKind::FR: {
            // With two parts the first sub-slot keeps the default configuration.
            const bool flips = k_parts > 2 || (k_parts == 2 && sub_slot == 1);
            if (flips) {
                for (std::size_t i = 0; i < q; ++i) {
                    if (plan.assignment()[i] == sub_slot) state.phases[i] = std::numbers::pi;
                }
            }
            break;
        }
        case SchemeKind::PB: {
            if (realization == nullptr) {
                throw DomainError("passive beamforming needs the channel realization");
            }
            if (realization->h.cols() != 1 || realization->g.rows() != 1) {
                throw UnsupportedConfiguration("passive beamforming is defined for SISO links only");
            }
            if (static_cast<std::size_t>(realization->h.rows()) != q) {
                throw DomainError("realization has a different element count than the scheme");
            }
            constexpr double two_pi = 2.0 * std::numbers::pi;
            for (std::size_t i = 0; i < q; ++i) {
                const auto e = static_cast<Eigen::Index>(i);
                double phase = -std::arg(realization->h(e, 0) * realization->g(0, e));
                if (phase < 0.0) phase += two_pi;
                if (phase >= two_pi) phase -= two_pi;
                state.phases[i] = phase;
            }
            break;
        }
    }
    return state;
}

CMatrix effective_channel(const ChannelRealization& realization, const ReflectionState& state) {
    const Eigen::Index q = realization.h.rows();
    if (realization.g.cols() != q || static_cast<Eigen::Index>(state.amplitudes.size()) != q ||
        state.phases.size() != state.amplitudes.size()) {
        throw DomainError("effective_channel: dimension mismatch between G, Phi and H");
    }
    return realization.g * state.coefficients().asDiagonal() * realization.h;
}

double mutual_information_subslot(const CMatrix& eff, double rho, int tx_antennas) {
    if (!(rho >= 0.0) || !std::isfinite(rho)) throw DomainError("rho must be finite and >= 0");
    if (tx_antennas < 1) throw DomainError("transmit antenna count must be positive");
    if (!eff.allFinite()) throw DomainError("effective channel has non-finite entries");

    const double scale = rho / tx_antennas;
    // det(I_L + c H H^H) = det(I_N + c H^H H); factor the smaller Gram matrix.
    CMatrix gram = eff.rows() <= eff.cols() ? CMatrix(eff * eff.adjoint()) : CMatrix(eff.adjoint() * eff);
    gram *= scale;
    gram.diagonal().array() += 1.0;

    Eigen::LLT<CMatrix> llt(gram);
    if (llt.info() != Eigen::Success) throw DomainError("I + (rho/N) H H^H is not positive definite");
    double log_det = 0.0;
    const auto& lower = llt.matrixLLT();
    for (Eigen::Index i = 0; i < lower.rows(); ++i) log_det += std::log(lower(i, i).real());
    return 2.0 * log_det / std::numbers::ln2;
}

double slot_mutual_information(const ChannelRealization& realization, const SchemeConfig& config,
                               double rho, int tx_antennas) {
    const int k_parts = config.sub_slots();
    double total = 0.0;
    for (int k = 0; k < k_parts; ++k) {
        const ReflectionState state = build_reflection(config, k, &realization);
        total += mutual_information_subslot(effective_channel(realization, state), rho, tx_antennas);
    }
    return total / k_parts;
}

}  // namespace rislab
