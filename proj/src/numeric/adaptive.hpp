#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration on a finite interval.
// The panel rule comes from Boost.Math; the subdivision strategy and the
// absolute-or-relative stopping rule are ours.

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace rislab::numeric {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
    int evaluations = 0;
};

struct QuadTolerance {
    double absolute = 1e-13;
    double relative = 1e-11;
    int max_panels = 4000;
};

namespace detail {

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F& f, double a, double b) {
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& kx = kronrod::abscissa();
    const auto& kw = kronrod::weights();
    const auto& gw = gauss::weights();

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double k_sum = f0 * kw[0];
    double g_sum = f0 * gw[0];
    for (std::size_t i = 1; i < kx.size(); ++i) {
        const double dx = half * kx[i];
        const double pair = f(mid - dx) + f(mid + dx);
        k_sum += kw[i] * pair;
        // Gauss-7 nodes sit at the even Kronrod positions.
        if (i % 2 == 0) g_sum += gw[i / 2] * pair;
    }
    return Panel{a, b, k_sum * half, std::abs((k_sum - g_sum) * half)};
}

}  // namespace detail

/// Integrates f over [a, b]; stops once the summed panel error is below
/// max(tol.absolute, tol.relative * |value|). Panel contributions are summed
/// in interval order, so the result does not depend on refinement history.
template <class F>
QuadResult integrate(F&& f, double a, double b, QuadTolerance tol = {}) {
    QuadResult out;
    if (!(b > a)) return out;
    std::priority_queue<detail::Panel> work;
    work.push(detail::gk15(f, a, b));
    out.evaluations = 15;
    double total_error = work.top().error;
    double total_value = work.top().value;
    int panels = 1;
    while (total_error > std::max(tol.absolute, tol.relative * std::abs(total_value))) {
        if (panels >= tol.max_panels) {
            out.converged = false;
            break;
        }
        const detail::Panel worst = work.top();
        work.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const detail::Panel left = detail::gk15(f, worst.a, mid);
        const detail::Panel right = detail::gk15(f, mid, worst.b);
        out.evaluations += 30;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        work.push(left);
        work.push(right);
        ++panels;
    }

    // Re-sum in interval order with compensation.
    std::vector<detail::Panel> all;
    all.reserve(work.size());
    while (!work.empty()) {
        all.push_back(work.top());
        work.pop();
    }
    std::sort(all.begin(), all.end(), [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
    double sum = 0.0, comp = 0.0, err = 0.0;
    for (const auto& p : all) {
        const double y = p.value - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        err += p.error;
    }
    out.value = sum;
    out.error = err;
    return out;
}

}  // namespace rislab::numeric
