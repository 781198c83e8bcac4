#include <cmath>
#include <numbers>

#include "rislab/errors.hpp"
#include "rislab/specfun.hpp"

namespace rislab {

namespace {

// B_{2n} / (2n (2n - 1)) for n = 1..8.
constexpr double kStirling[] = {1.0 / 12.0,    -1.0 / 360.0,  1.0 / 1260.0,       -1.0 / 1680.0,
                                1.0 / 1188.0,  -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0};

constexpr double kMinModulus = 15.0;

cplx stirling(cplx z) {
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx series = 0.0;
    cplx power = inv;
    for (double c : kStirling) {
        series += c * power;
        power *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

}  // namespace

cplx log_gamma(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("log_gamma needs a finite argument");
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
        throw PoleError("Gamma has a pole at non-positive integer " + std::to_string(z.real()));
    }
    // Shift right with Gamma(z) = Gamma(z + n) / (z (z+1) ... (z+n-1)). Each log is principal
    // and analytic off (-inf, -k], so the sum stays on the principal branch of log Gamma.
    cplx shift = 0.0;
    while (z.real() < 0.0 || std::abs(z) < kMinModulus) {
        shift += std::log(z);
        z += 1.0;
    }
    return stirling(z) - shift;
}

}  // namespace rislab
