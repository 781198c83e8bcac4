#include <cmath>

#include "numeric/adaptive.hpp"
#include "rislab/errors.hpp"
#include "rislab/specfun.hpp"

namespace rislab {

namespace {

// Nested quadrature costs grow geometrically with K; beyond this the caller
// should sample instead.
constexpr int kMaxFactors = 6;
// e^{-w} below 1e-22 contributes nothing at the 1e-9 target.
constexpr double kExpCutoff = 50.0;

double cdf(int k, double scale, double threshold) {
    if (!(threshold > 1.0)) return 0.0;
    const double span = (threshold - 1.0) / scale;
    if (k == 1) return -std::expm1(-span);
    // Condition on the first factor: 1 + scale w < threshold, remaining product below threshold / (1 + scale w).
    const numeric::QuadTolerance tol{1e-12, 1e-10, 2000};
    const auto result = numeric::integrate(
        [&](double w) { return std::exp(-w) * cdf(k - 1, scale, threshold / (1.0 + scale * w)); }, 0.0,
        std::min(span, kExpCutoff), tol);
    return result.value;
}

}  // namespace

double product_shifted_exp_cdf(int k_factors, double scale, double threshold) {
    if (k_factors < 1) throw DomainError("product needs at least one factor");
    if (k_factors > kMaxFactors) {
        throw UnsupportedConfiguration("product of more than " + std::to_string(kMaxFactors) +
                                       " shifted exponentials is not evaluated by nested quadrature");
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("scale must be positive and finite");
    if (std::isnan(threshold)) throw DomainError("threshold is NaN");
    if (std::isinf(threshold)) return 1.0;
    return std::clamp(cdf(k_factors, scale, threshold), 0.0, 1.0);
}

}  // namespace rislab
