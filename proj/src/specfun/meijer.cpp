#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rislab/errors.hpp"
#include "rislab/specfun.hpp"

// G^{3,1}_{1,3}(x | a; b) = (1/2 pi j) int Gamma(b1-s) Gamma(b2-s) Gamma(b3-s) Gamma(1-a+s) x^s ds.
//
// The integrand is evaluated on a straight line Re s = c. When the left poles
// (s = a-1-k) reach as far right as the b-poles, no straight line separates
// them; the line is then placed left of the b-poles and the left poles it
// passes are added back as residues.

namespace rislab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPoleGuard = 1e-9;
constexpr int kMinNodes = 65;
constexpr double kMaxHalfLength = 400.0;

struct Geometry {
    double offset;
    double strip;  // distance from the line to the nearest pole
};

double min_real(const std::array<cplx, 3>& b) {
    return std::min({b[0].real(), b[1].real(), b[2].real()});
}

void check_coincident(const std::array<cplx, 3>& b, cplx a) {
    for (const cplx& bj : b) {
        const cplx d = a - 1.0 - bj;
        const double k = std::round(d.real());
        if (std::abs(d.imag()) < kPoleGuard && k >= 0.0 && std::abs(d.real() - k) < kPoleGuard) {
            throw ConfigurationError("Meijer-G pole families coincide; no contour exists");
        }
    }
}

Geometry choose_line(const std::array<cplx, 3>& b, cplx a) {
    const double beta = min_real(b);
    const double alpha = a.real() - 1.0;
    if (alpha < beta) return {0.5 * (alpha + beta), 0.5 * (beta - alpha)};
    // Largest left-pole real part strictly below beta, but never further than one unit.
    const double lower = alpha - std::floor(alpha - beta) - 1.0;
    return {0.5 * (beta + lower), 0.5 * (beta - lower)};
}

void check_line(const std::array<cplx, 3>& b, cplx a, double c) {
    if (!(c < min_real(b) - kPoleGuard)) {
        throw ConfigurationError("contour offset must lie left of every Gamma(b - s) pole");
    }
    const double frac = (a.real() - 1.0 - c) - std::floor(a.real() - 1.0 - c);
    if (a.real() - 1.0 >= c && (frac < kPoleGuard || frac > 1.0 - kPoleGuard)) {
        throw ConfigurationError("contour offset passes through a Gamma(1 - a + s) pole");
    }
}

cplx log_integrand(const std::array<cplx, 3>& b, cplx a, double log_x, cplx s) {
    return log_gamma(b[0] - s) + log_gamma(b[1] - s) + log_gamma(b[2] - s) + log_gamma(1.0 - a + s) + s * log_x;
}

// Residues of Gamma(1 - a + s) at s = a-1-k for every such pole right of the line.
cplx residue_sum(const std::array<cplx, 3>& b, cplx a, double log_x, double c) {
    cplx sum = 0.0;
    for (int k = 0; a.real() - 1.0 - k > c; ++k) {
        const cplx s = a - 1.0 - static_cast<double>(k);
        const cplx log_term = log_gamma(b[0] - s) + log_gamma(b[1] - s) + log_gamma(b[2] - s) + s * log_x -
                              std::lgamma(k + 1.0);
        sum += (k % 2 == 0 ? 1.0 : -1.0) * std::exp(log_term);
    }
    return sum;
}

double step_for(double strip, double tolerance, double log_x) {
    return kTwoPi * strip / (std::log(1.0 / tolerance) + 5.0 + strip * std::abs(log_x));
}

int odd_nodes(double half_length, double step) {
    int n = static_cast<int>(std::ceil(2.0 * half_length / step)) + 1;
    if (n % 2 == 0) ++n;
    return std::max(n, kMinNodes);
}

// Trapezoid sum over y_i = -Y + i h together with the even-node (2h) sum.
template <class F>
ContourValue trapezoid(int nodes, double half_length, F&& f) {
    const double h = 2.0 * half_length / (nodes - 1);
    cplx all = 0.0;
    cplx even = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const cplx v = f(i, -half_length + i * h);
        all += v;
        if (i % 2 == 0) even += v;
    }
    const cplx fine = all * (h / kTwoPi);
    const cplx coarse = even * (2.0 * h / kTwoPi);
    return {fine, std::abs(fine - coarse)};
}

}  // namespace

ContourSpec plan_contour_3113(const std::array<cplx, 3>& b, cplx a, double x, double tolerance) {
    if (!(x > 0.0)) throw DomainError("Meijer-G argument must be positive");
    if (!(tolerance > 0.0)) throw DomainError("contour tolerance must be positive");
    check_coincident(b, a);
    const Geometry geo = choose_line(b, a);
    const double log_x = std::log(x);

    const double reference = std::max(std::abs(residue_sum(b, a, log_x, geo.offset)),
                                      std::abs(std::exp(log_integrand(b, a, log_x, cplx(geo.offset, 0.0)))));
    double half = 1.0;
    while (half < kMaxHalfLength) {
        const double up = std::exp(log_integrand(b, a, log_x, cplx(geo.offset, half)).real());
        const double down = std::exp(log_integrand(b, a, log_x, cplx(geo.offset, -half)).real());
        if (std::max(up, down) * (1.0 + half) < 1e-3 * tolerance * reference) break;
        half += 1.0;
    }
    const double step = step_for(geo.strip, tolerance, log_x);
    return ContourSpec{geo.offset, half, odd_nodes(half, step), tolerance};
}

ContourValue meijer_g_3113(const std::array<cplx, 3>& b, cplx a, double x, const ContourSpec& plan) {
    if (!(x > 0.0)) throw DomainError("Meijer-G argument must be positive");
    if (plan.nodes < 64) throw DomainError("contour needs at least 64 nodes");
    if (!(plan.tolerance > 0.0) || !(plan.half_length > 0.0)) throw DomainError("invalid contour plan");
    check_coincident(b, a);
    check_line(b, a, plan.offset);

    const double log_x = std::log(x);
    const int nodes = plan.nodes % 2 == 1 ? plan.nodes : plan.nodes + 1;
    ContourValue line = trapezoid(nodes, plan.half_length, [&](int, double y) {
        return std::exp(log_integrand(b, a, log_x, cplx(plan.offset, y)));
    });
    line.value += residue_sum(b, a, log_x, plan.offset);
    return line;
}

MeijerG3113Family::MeijerG3113Family(double b2, double b3, double x, double log_scale, double tolerance)
{
    if (!(x > 0.0)) throw DomainError("Meijer-G argument must be positive");
    if (!(b2 > 0.0) || !(b3 > 0.0)) throw DomainError("fixed Meijer-G parameters must be positive");
    if (!(tolerance > 0.0)) throw DomainError("contour tolerance must be positive");

    // b1 = -j t / ln 2 sits on Re s = 0 together with the Gamma(s) pole at 0.
    constexpr double offset = -0.5;
    constexpr double strip = 0.5;
    const double log_x = std::log(x);
    residue_ = std::exp(std::lgamma(b2) + std::lgamma(b3) - log_scale);

    auto log_fixed = [&](double y) {
        const cplx s(offset, y);
        return log_gamma(b2 - s) + log_gamma(b3 - s) + log_gamma(s) + s * log_x - log_scale;
    };
    // |Gamma(b1 - s) / Gamma(b1)| grows at most like sqrt(2|t/ln2|) e^{pi|y|/2}.
    double half = 1.0;
    while (half < kMaxHalfLength) {
        const double envelope = std::exp(std::max(log_fixed(half).real(), log_fixed(-half).real()) +
                                          0.5 * std::numbers::pi * half);
        if (envelope * (1.0 + half) * (1.0 + half) < 1e-3 * tolerance * std::max(1.0, residue_)) break;
        half += 1.0;
    }
    step_ = step_for(strip, tolerance, log_x);
    const int nodes = odd_nodes(half, step_);
    step_ = 2.0 * half / (nodes - 1);
    plan_ = ContourSpec{offset, half, nodes, tolerance};

    y_.resize(static_cast<std::size_t>(nodes));
    log_fixed_.resize(static_cast<std::size_t>(nodes));
    for (int i = 0; i < nodes; ++i) {
        y_[static_cast<std::size_t>(i)] = -half + i * step_;
        log_fixed_[static_cast<std::size_t>(i)] = log_fixed(y_[static_cast<std::size_t>(i)]);
    }
}

ContourValue MeijerG3113Family::at(double t) const {
    if (!std::isfinite(t)) throw DomainError("frequency must be finite");
    // 1 / Gamma(b1) vanishes at t = 0, leaving only the residue at s = 0.
    if (t == 0.0) return {cplx(residue_, 0.0), 0.0};
    const cplx b1(0.0, -t / std::numbers::ln2);
    const cplx log_g_b1 = log_gamma(b1);
    ContourValue line = trapezoid(plan_.nodes, plan_.half_length, [&](int i, double y) {
        const cplx s(plan_.offset, y);
        return std::exp(log_fixed_[static_cast<std::size_t>(i)] + log_gamma(b1 - s) - log_g_b1);
    });
    line.value += residue_;
    return line;
}

}  // namespace rislab
