#include <algorithm>
#include <cmath>

#include "numeric/adaptive.hpp"
#include "rislab/analytic.hpp"
#include "rislab/errors.hpp"

namespace rislab {

namespace {

// Nested integration over tau_k = 1 + rho w_k, k = 1..K-1, outermost tau_1.
// The last gain W_K is integrated in closed form through the Marcum Q-function.
class FrIntegral {
public:
    FrIntegral(const CorrelatedGainModel& model, double rate, double rho, const FrQuadratureSpec& spec)
        : k_(model.k_parts),
          rho_(rho),
          q_(model.sigma_sq),
          zeta_(model.zeta),
          omega_(model.omega),
          target_(std::exp2(rate * model.k_parts)),
          tol_{spec.absolute_tolerance, spec.relative_tolerance, spec.max_panels} {}

    double evaluate() { return level(1, 1.0, 0.0); }
    bool converged() const noexcept { return converged_; }
    double error() const noexcept { return error_; }

private:
    // Sub-slot gain density of W_k given W_1 = y (non-central chi-square, two degrees of freedom).
    double conditional_density(double x, double y) const {
        const double z = 2.0 * std::sqrt(zeta_ * x * y) / omega_;
        const double root = std::sqrt(x) - std::sqrt(zeta_ * y);
        return std::exp(-root * root / omega_) * bessel_i0e(z) / omega_;
    }

    double last_factor(double product, double y1) const {
        const double c = target_ / product;
        if (!(c > 1.0)) return 0.0;
        const double theta = (c - 1.0) / (rho_ * omega_);
        return marcum_q1_complement(std::sqrt(2.0 * zeta_ * y1 / omega_), std::sqrt(2.0 * theta));
    }

    double level(int i, double product, double y1) {
        if (i == k_) return last_factor(product, y1);
        const double upper = target_ / product;
        if (!(upper > 1.0)) return 0.0;
        auto integrand = [&](double tau) {
            const double w = (tau - 1.0) / rho_;
            const double density = i == 1 ? std::exp(-w / q_) / q_ : conditional_density(w, y1);
            if (density == 0.0) return 0.0;
            return density / rho_ * level(i + 1, product * tau, i == 1 ? w : y1);
        };
        const numeric::QuadResult r = numeric::integrate(integrand, 1.0, upper, tol_);
        converged_ = converged_ && r.converged;
        if (i == 1) error_ = r.error;
        return r.value;
    }

    int k_;
    double rho_;
    double q_;
    double zeta_;
    double omega_;
    double target_;
    numeric::QuadTolerance tol_;
    bool converged_ = true;
    double error_ = 0.0;
};

}  // namespace

double outage_fr_siso(const CorrelatedGainModel& model, double rate, double rho, const FrQuadratureSpec& spec) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw DomainError("target rate must be finite and >= 0");
    if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("SNR must be positive and finite");
    if (model.k_parts < 2) throw DomainError("FR surrogate needs K >= 2");
    if (model.k_parts > spec.max_parts) {
        throw UnsupportedConfiguration("FR surrogate integral has dimension K - 1 = " +
                                       std::to_string(model.k_parts - 1) + "; raise max_parts to allow it");
    }
    if (!(model.zeta >= 0.0 && model.zeta < 1.0)) throw DomainError("FR surrogate needs 0 <= zeta < 1");
    FrIntegral integral(model, rate, rho, spec);
    const double value = std::clamp(integral.evaluate(), 0.0, 1.0);
    if (!integral.converged()) {
        throw AccuracyError("FR surrogate quadrature did not converge", value, integral.error());
    }
    return value;
}

double outage_fr_siso(double rate, int k_parts, int m, double rho, const FrQuadratureSpec& spec) {
    return outage_fr_siso(corr_coeff(k_parts * m, k_parts, m), rate, rho, spec);
}

}  // namespace rislab
