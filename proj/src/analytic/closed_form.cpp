#include <cmath>
#include <numbers>

#include "rislab/analytic.hpp"
#include "rislab/errors.hpp"

namespace rislab {

namespace {

void check_common(double rate, double rho) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw DomainError("target rate must be finite and >= 0");
    if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("SNR must be positive and finite");
}

}  // namespace

double outage_ar_clt(double rate, int k_parts, int m, double rho) {
    check_common(rate, rho);
    if (k_parts < 1 || m < 1) throw DomainError("need K >= 1 and m >= 1");
    return product_shifted_exp_cdf(k_parts, rho * m, std::exp2(rate * k_parts));
}

double outage_pr_siso(double rate, double rho, int q) {
    check_common(rate, rho);
    if (q < 1) throw DomainError("need Q >= 1");
    return -std::expm1(-std::expm1(rate * std::numbers::ln2) / (rho * q));
}

CorrelatedGainModel CorrelatedGainModel::with_zeta(double z) const {
    if (!(z >= 0.0 && z <= 1.0)) throw DomainError("correlation coefficient must lie in [0, 1]");
    CorrelatedGainModel out = *this;
    out.zeta = z;
    out.omega = q * (1.0 - z);
    return out;
}

CorrelatedGainModel corr_coeff(int q, int k_parts, int m) {
    if (k_parts < 2) throw DomainError("gain correlation needs K >= 2 sub-slots");
    if (m < 1 || static_cast<long>(k_parts) * m != q) throw DomainError("partition must satisfy K m = Q");
    CorrelatedGainModel out;
    out.q = q;
    out.k_parts = k_parts;
    out.m = m;
    out.b = k_parts == 2 ? m : 2 * m;
    const double qd = q;
    const double diff = qd - 2.0 * out.b;
    out.zeta = (diff * diff + 2.0 * qd) / (qd * (qd + 2.0));
    out.omega = qd * (1.0 - out.zeta);
    out.sigma_sq = qd;
    out.zeta_limit = k_parts == 2 ? 0.0 : 1.0 - 8.0 * (k_parts - 2.0) / (static_cast<double>(k_parts) * k_parts);
    return out;
}

double outage_fr_bound(const ChannelDims& dims, double rate, int k_parts, double rho, const GilPelaezPlan& plan) {
    check_common(rate, rho);
    if (dims.is_siso()) return outage_ar_clt(rate, k_parts, dims.ris(), rho);
    return outage_gil_pelaez(dims, rate, k_parts, rho, plan);
}

}  // namespace rislab
