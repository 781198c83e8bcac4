#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "rislab/errors.hpp"
#include "rislab/specfun.hpp"

// Q1(a, b) = P{Y <= J} with independent J ~ Poisson(a^2/2) and Y ~ Poisson(b^2/2).
// Conditioning on J gives sums of positive terms for both Q1 and 1 - Q1, so
// neither tail loses digits to cancellation.

namespace rislab {

namespace {

enum class Tail { Upper, Lower };

double poisson_race(double a, double b, Tail tail) {
    if (!(a >= 0.0) || !(b >= 0.0)) throw DomainError("Marcum Q needs a, b >= 0");
    const double mu_j = 0.5 * a * a;
    const double mu_y = 0.5 * b * b;
    if (mu_y == 0.0) return tail == Tail::Upper ? 1.0 : 0.0;
    if (mu_j == 0.0) return tail == Tail::Upper ? std::exp(-mu_y) : -std::expm1(-mu_y);

    const double spread = std::max(mu_j, mu_y);
    const double first = std::max(0.0, std::floor(mu_j - 40.0 * std::sqrt(mu_j) - 40.0));
    const double last = std::ceil(spread + 40.0 * std::sqrt(spread) + 50.0);
    const double log_mu_j = std::log(mu_j);

    double sum = 0.0;
    double comp = 0.0;
    for (double k = first; k <= last; k += 1.0) {
        const double log_p = k * log_mu_j - mu_j - std::lgamma(k + 1.0);
        // P{Y <= k} and P{Y > k} as regularized incomplete gammas.
        const double tail_y = tail == Tail::Upper ? boost::math::gamma_q(k + 1.0, mu_y)
                                                  : boost::math::gamma_p(k + 1.0, mu_y);
        const double term = std::exp(log_p) * tail_y;
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (k > spread && term <= sum * 1e-18) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

}  // namespace

double marcum_q1(double a, double b) { return poisson_race(a, b, Tail::Upper); }

double marcum_q1_complement(double a, double b) { return poisson_race(a, b, Tail::Lower); }

}  // namespace rislab
