#include "montecarlo/kernels.hpp"

#include <cmath>

#include "rislab/errors.hpp"

namespace rislab::detail {

OutageKernel::OutageKernel(const ChannelDims& dims, std::span<const SchemeConfig> configs,
                           const SnrGrid& grid)
    : dims_(dims), rho_(grid.rho()) {
    for (const SchemeConfig& config : configs) {
        if (config.plan().elements() != dims.ris()) {
            throw DomainError("scheme partition covers " + std::to_string(config.plan().elements()) +
                              " elements but the channel has " + std::to_string(dims.ris()));
        }
        if (config.kind() == SchemeKind::PB && !dims.is_siso()) {
            throw UnsupportedConfiguration("passive beamforming is defined for SISO links only");
        }
        PreparedScheme prepared{config.kind(), {}, std::exp2(grid.rate() * config.sub_slots())};
        if (config.kind() != SchemeKind::PB) {
            for (int k = 0; k < config.sub_slots(); ++k) {
                prepared.coefficients.push_back(build_reflection(config, k).coefficients());
            }
        }
        configs_.push_back(std::move(prepared));
    }
    snr_scale_.reserve(rho_.size());
    for (double rho : rho_) snr_scale_.push_back(rho / dims.tx());
}

OutageKernel::Workspace OutageKernel::make_workspace() const {
    Workspace ws;
    ws.channel.h.resize(dims_.ris(), dims_.tx());
    ws.channel.g.resize(dims_.rx(), dims_.ris());
    ws.scaled_h.resize(dims_.ris(), dims_.tx());
    ws.eff.resize(dims_.rx(), dims_.tx());
    const int gram_size = std::min(dims_.rx(), dims_.tx());
    ws.gram.resize(gram_size, gram_size);
    ws.pb_coefficients.resize(dims_.ris());
    ws.products.resize(rho_.size());
    return ws;
}

// Multiplies ws.products[r] by det(I + (rho_r/N) eff eff^H) for the current ws.eff.
void OutageKernel::accumulate_subslot(Workspace& ws) const {
    const CMatrix& eff = ws.eff;
    const std::size_t points = rho_.size();
    if (eff.rows() == 1 || eff.cols() == 1) {
        // Rank one: the only non-zero eigenvalue is the Frobenius norm squared.
        const double gain = eff.squaredNorm();
        for (std::size_t r = 0; r < points; ++r) ws.products[r] *= 1.0 + snr_scale_[r] * gain;
        return;
    }
    if (eff.rows() <= eff.cols()) {
        ws.gram.noalias() = eff * eff.adjoint();
    } else {
        ws.gram.noalias() = eff.adjoint() * eff;
    }
    if (ws.gram.rows() == 2) {
        const double a = ws.gram(0, 0).real();
        const double d = ws.gram(1, 1).real();
        const double trace = a + d;
        const double det = std::max(0.0, a * d - std::norm(ws.gram(0, 1)));
        for (std::size_t r = 0; r < points; ++r) {
            const double c = snr_scale_[r];
            ws.products[r] *= 1.0 + c * trace + c * c * det;
        }
        return;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(ws.gram, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& lambda = solver.eigenvalues();
    for (std::size_t r = 0; r < points; ++r) {
        double det = 1.0;
        for (Eigen::Index i = 0; i < lambda.size(); ++i) {
            det *= 1.0 + snr_scale_[r] * std::max(0.0, lambda[i]);
        }
        ws.products[r] *= det;
    }
}

void OutageKernel::run_trial(std::uint64_t master_seed, std::uint64_t trial, Workspace& ws,
                             std::uint64_t* counts) const {
    TrialStream stream(master_seed, trial);
    draw_channel_into(dims_, stream, ws.channel);
    const CMatrix& h = ws.channel.h;
    const CMatrix& g = ws.channel.g;
    const std::size_t points = rho_.size();

    for (std::size_t c = 0; c < configs_.size(); ++c) {
        const PreparedScheme& scheme = configs_[c];
        std::fill(ws.products.begin(), ws.products.end(), 1.0);

        if (scheme.kind == SchemeKind::PB) {
            // Co-phase every cascaded path: phase_i = -arg(h_i g_i).
            for (Eigen::Index i = 0; i < h.rows(); ++i) {
                const cplx path = h(i, 0) * g(0, i);
                const double mag = std::abs(path);
                ws.pb_coefficients[i] = mag > 0.0 ? std::conj(path) / mag : cplx(1.0, 0.0);
            }
            ws.scaled_h.noalias() = ws.pb_coefficients.asDiagonal() * h;
            ws.eff.noalias() = g * ws.scaled_h;
            accumulate_subslot(ws);
        } else {
            for (const Eigen::VectorXcd& coeff : scheme.coefficients) {
                ws.scaled_h.noalias() = coeff.asDiagonal() * h;
                ws.eff.noalias() = g * ws.scaled_h;
                accumulate_subslot(ws);
            }
        }

        std::uint64_t* row = counts + c * points;
        for (std::size_t r = 0; r < points; ++r) {
            if (ws.products[r] < scheme.threshold) ++row[r];
        }
    }
}

std::vector<OutageEstimate> to_estimates(std::span<const std::uint64_t> counts, const SnrGrid& grid,
                                         std::uint64_t trials, RngSpec rng) {
    std::vector<OutageEstimate> out;
    out.reserve(grid.size());
    for (std::size_t r = 0; r < grid.size(); ++r) {
        const WilsonInterval ci = wilson_interval(counts[r], trials);
        out.push_back(OutageEstimate{grid.rho()[r], static_cast<double>(counts[r]) / static_cast<double>(trials),
                                     counts[r], trials, ci.low, ci.high, rng});
    }
    return out;
}

}  // namespace rislab::detail
