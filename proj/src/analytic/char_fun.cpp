#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "rislab/analytic.hpp"
#include "rislab/errors.hpp"

namespace rislab {

namespace {

void check_rho(double rho) {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("SNR must be positive and finite");
}

// log K_nu(u), falling back to the small-argument form where K_nu overflows.
double log_bessel_k(double nu, double u) {
    if (u > 700.0) return -u + 0.5 * std::log(0.5 * std::numbers::pi / u);
    double k = std::numeric_limits<double>::infinity();
    try {
        k = std::cyl_bessel_k(nu, u);
    } catch (const std::exception&) {
    }
    if (std::isfinite(k) && k > 0.0 && k < 1e300) return std::log(k);
    if (nu == 0.0) return std::log(-std::log(0.5 * u) - std::numbers::egamma);
    return std::lgamma(nu) - std::log(2.0) + nu * std::log(2.0 / u);
}

}  // namespace

CharFunction::CharFunction(const ChannelDims& dims, double rho, double contour_tolerance)
    : dims_(dims), rho_(rho), n0_(dims.n0()), log_norm_(0.0) {
    check_rho(rho);
    const double x = static_cast<double>(dims.tx()) / rho;
    const int nu1 = dims.nu(1);
    const int nu2 = dims.nu(2);
    for (int z = 1; z <= n0_; ++z) log_norm_ += std::lgamma(static_cast<double>(z));
    // Row i is divided by Gamma(nu2 + i) Gamma(nu1 + i), which is exactly the
    // remaining Gamma-product normaliser, so entries stay O(1).
    entries_.reserve(static_cast<std::size_t>(n0_ * n0_));
    for (int i = 1; i <= n0_; ++i) {
        const double log_row = std::lgamma(static_cast<double>(nu2 + i)) + std::lgamma(static_cast<double>(nu1 + i));
        for (int j = 1; j <= n0_; ++j) {
            entries_.emplace_back(static_cast<double>(nu2 + i), static_cast<double>(nu1 + i + j - 1), x, log_row,
                                  contour_tolerance);
        }
    }
}

CharFunSample CharFunction::operator()(double t) const {
    const auto n = static_cast<Eigen::Index>(n0_);
    Eigen::MatrixXcd e(n, n);
    double err_sum = 0.0;
    double max_abs = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const ContourValue v = entries_[static_cast<std::size_t>(i * n + j)].at(t);
            e(i, j) = v.value;
            err_sum += v.error;
            max_abs = std::max(max_abs, std::abs(v.value));
        }
    }
    const double norm = std::exp(-log_norm_);
    const cplx det = n0_ == 1 ? e(0, 0) : e.partialPivLu().determinant();
    // First-order bound: each entry error times the largest possible cofactor.
    const double cofactor = std::exp(std::lgamma(static_cast<double>(n0_))) * std::pow(max_abs, n0_ - 1);
    return CharFunSample{t, det * norm, err_sum * cofactor * norm};
}

CharFunSample char_fun(const ChannelDims& dims, double rho, double t) { return CharFunction(dims, rho)(t); }

CharFunSample char_fun_density(const ChannelDims& dims, double rho, double t) {
    check_rho(rho);
    if (dims.n0() != 1) throw UnsupportedConfiguration("density path needs min(N, Q, L) = 1");
    const double n1 = dims.n1();
    const double n2 = dims.n2();
    const double nu = n2 - n1;
    const double snr = rho / dims.tx();
    const double log_const = -std::lgamma(n1) - std::lgamma(n2);

    // lambda = u^2 / 4, so f(lambda) d lambda = (u/2)^{n1+n2-2} u K_nu(u) du / (Gamma(n1) Gamma(n2)).
    auto weight = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double lw = (n1 + n2 - 2.0) * std::log(0.5 * u) + std::log(u) + log_bessel_k(nu, u) + log_const;
        return std::exp(lw);
    };
    auto phase = [&](double u) { return t * std::log2(1.0 + snr * 0.25 * u * u); };

    boost::math::quadrature::exp_sinh<double> integrator;
    double err_re = 0.0;
    double err_im = 0.0;
    const double re = integrator.integrate([&](double u) { return weight(u) * std::cos(phase(u)); }, 1e-13, &err_re);
    const double im = integrator.integrate([&](double u) { return weight(u) * std::sin(phase(u)); }, 1e-13, &err_im);
    return CharFunSample{t, cplx(re, im), err_re + err_im};
}

}  // namespace rislab
