#pragma once

#include <array>
#include <complex>
#include <vector>

namespace rislab {

using cplx = std::complex<double>;

/// Modified Bessel function of the first kind, order zero.
double bessel_i0(double x);

/// exp(-x) * I0(x), finite for every x >= 0.
double bessel_i0e(double x);

/// First-order Marcum Q-function Q1(a, b).
double marcum_q1(double a, double b);

/// 1 - Q1(a, b), computed directly so small values keep full relative accuracy.
double marcum_q1_complement(double a, double b);

/// Principal branch of log Gamma(z).
cplx log_gamma(cplx z);

/// Straight Mellin-Barnes line Re s = offset, truncated to |Im s| <= half_length
/// and sampled by the trapezoid rule at `nodes` points.
struct ContourSpec {
    double offset = -0.5;
    double half_length = 20.0;
    int nodes = 256;
    double tolerance = 1e-12;
};

struct ContourValue {
    cplx value;
    /// |T(h) - T(2h)|, the change from dropping every second node.
    double error = 0.0;
};

/// Automatic contour for G^{3,1}_{1,3}(x | a; b): offset left of every Gamma(b_j - s)
/// pole, half-length from the integrand's decay, step from the strip width.
ContourSpec plan_contour_3113(const std::array<cplx, 3>& b, cplx a, double x, double tolerance = 1e-12);

/// G^{3,1}_{1,3}(x | a; b1, b2, b3) by a straight Mellin-Barnes line plus the residues of
/// Gamma(1 - a + s) lying between that line and the b-poles. Throws ConfigurationError
/// when the two pole families coincide or the line crosses a pole.
ContourValue meijer_g_3113(const std::array<cplx, 3>& b, cplx a, double x, const ContourSpec& plan);

/// The Meijer-G entries of the characteristic function of a Rayleigh product channel,
/// G(x | 1; b1, b2, b3) / (Gamma(b1) * scale) with b1 = -j t / ln 2 and fixed real b2, b3.
///
/// Everything that does not depend on t is cached at construction, so each t costs one
/// complex log-gamma per node. Callers pick exp(log_scale) to keep entries O(1).
class MeijerG3113Family {
public:
    MeijerG3113Family(double b2, double b3, double x, double log_scale, double tolerance = 1e-12);

    /// Entry at frequency t; at t = 0 the line term vanishes exactly.
    ContourValue at(double t) const;

    const ContourSpec& contour() const noexcept { return plan_; }

private:
    double residue_;  // Gamma(b2) Gamma(b3) / scale
    ContourSpec plan_;
    double step_;
    std::vector<double> y_;
    std::vector<cplx> log_fixed_;  // log Gamma(b2 - s) Gamma(b3 - s) Gamma(s) x^s - log scale
};

/// P{ prod_{k=1..K} (1 + scale * W_k) < threshold } for i.i.d. unit exponentials W_k.
double product_shifted_exp_cdf(int k_factors, double scale, double threshold);

}  // namespace rislab
