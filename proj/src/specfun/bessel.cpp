#include <cmath>
#include <numbers>

#include "rislab/errors.hpp"
#include "rislab/specfun.hpp"

namespace rislab {

namespace {

constexpr double kSeriesLimit = 30.0;

// sum (x^2/4)^k / (k!)^2; all terms positive.
double i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

// Hankel expansion of sqrt(2 pi x) e^{-x} I0(x), truncated at its smallest term.
double i0_asymptotic_scaled(double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if (next > term) break;
        term = next;
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

void check(double x) {
    if (!(x >= 0.0)) throw DomainError("Bessel I0 needs x >= 0");
}

}  // namespace

double bessel_i0(double x) {
    check(x);
    if (x <= kSeriesLimit) return i0_series(x);
    return i0_asymptotic_scaled(x) * std::exp(x);
}

double bessel_i0e(double x) {
    check(x);
    if (x <= kSeriesLimit) return i0_series(x) * std::exp(-x);
    return i0_asymptotic_scaled(x);
}

}  // namespace rislab
