#include <algorithm>
#include <cmath>
#include <numbers>

#include "numeric/adaptive.hpp"
#include "rislab/analytic.hpp"
#include "rislab/errors.hpp"

namespace rislab {

namespace {

cplx ipow(cplx z, int k) {
    cplx out = 1.0;
    for (int i = 0; i < k; ++i) out *= z;
    return out;
}

}  // namespace

GilPelaezResult outage_gil_pelaez_detailed(const ChannelDims& sub_dims, double rate, int k_parts, double rho,
                                           const GilPelaezPlan& plan) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw DomainError("target rate must be finite and >= 0");
    if (k_parts < 1) throw DomainError("need K >= 1");
    if (!(plan.tail_tolerance > 0.0) || !(plan.panel_tolerance > 0.0)) throw DomainError("tolerances must be positive");
    const CharFunction phi(sub_dims, rho, plan.contour_tolerance);

    // Im{[e^{-jtR} phi(t)]^K} / t; its limit at t = 0 is never sampled by Gauss-Kronrod.
    auto integrand = [&](double t) {
        const cplx z = ipow(std::polar(1.0, -t * rate) * phi(t).value, k_parts);
        return z.imag() / t;
    };

    // At large t the phase advances like K R, so panels span half a period.
    const double width = std::numbers::pi / (k_parts * std::max(rate, 1.0));
    const numeric::QuadTolerance tol{plan.panel_tolerance, 1e-12, 200};

    GilPelaezResult out;
    double sum = 0.0;
    double comp = 0.0;
    bool converged = true;
    double a = 0.0;
    while (true) {
        const double b = a + width;
        const numeric::QuadResult panel = numeric::integrate(integrand, a, b, tol);
        converged = converged && panel.converged;
        const double y = panel.value - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        out.quadrature_error += panel.error;
        a = b;
        out.tail_bound = std::pow(std::abs(phi(b).value), k_parts) / b;
        out.truncation = b;
        if (out.tail_bound < plan.tail_tolerance) break;
        if (b >= plan.max_frequency) {
            converged = false;
            break;
        }
    }

    out.raw_value = 0.5 - sum / std::numbers::pi;
    out.quadrature_error /= std::numbers::pi;
    out.value = std::clamp(out.raw_value, 0.0, 1.0);
    out.clamped = out.value != out.raw_value;
    if (!converged) {
        throw AccuracyError("Gil-Pelaez inversion did not reach its tolerance (T = " + std::to_string(out.truncation) +
                                ", tail " + std::to_string(out.tail_bound) + ")",
                            out.value, out.quadrature_error + out.tail_bound);
    }
    return out;
}

double outage_gil_pelaez(const ChannelDims& sub_dims, double rate, int k_parts, double rho, const GilPelaezPlan& plan) {
    return outage_gil_pelaez_detailed(sub_dims, rate, k_parts, rho, plan).value;
}

}  // namespace rislab
