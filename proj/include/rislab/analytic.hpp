#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "rislab/channel.hpp"
#include "rislab/specfun.hpp"

namespace rislab {

/// One value of the characteristic function E[exp(j t I)] of the PR mutual information.
struct CharFunSample {
    double t = 0.0;
    cplx value;
    /// Propagated contour error estimate.
    double error = 0.0;
};

/// Characteristic function of the mutual information of the (N, Q, L) Rayleigh product
/// channel at a fixed SNR, assembled as an n0 x n0 determinant of Meijer-G entries.
/// Construction caches the t-independent contour data; evaluation is then cheap.
class CharFunction {
public:
    CharFunction(const ChannelDims& dims, double rho, double contour_tolerance = 1e-12);

    CharFunSample operator()(double t) const;

    const ChannelDims& dims() const noexcept { return dims_; }
    double rho() const noexcept { return rho_; }

private:
    ChannelDims dims_;
    double rho_;
    int n0_;
    double log_norm_;  // log prod_{z=1..n0} Gamma(z)
    std::vector<MeijerG3113Family> entries_;  // row-major n0 x n0
};

/// One-shot convenience wrapper around CharFunction.
CharFunSample char_fun(const ChannelDims& dims, double rho, double t);

/// Independent path for channels with min(N, Q, L) = 1: direct quadrature of
/// exp(j t log2(1 + rho lambda / N)) against the K-Bessel density of the single eigenvalue.
CharFunSample char_fun_density(const ChannelDims& dims, double rho, double t);

struct GilPelaezPlan {
    /// Stop once |phi(T)|^K / T falls below this.
    double tail_tolerance = 1e-10;
    /// Per-panel absolute tolerance of the adaptive rule.
    double panel_tolerance = 1e-12;
    double contour_tolerance = 1e-12;
    /// Hard cap on the truncation point; reaching it raises AccuracyError.
    double max_frequency = 1e7;
};

struct GilPelaezResult {
    double value = 0.0;
    /// Summed quadrature error estimate over all panels.
    double quadrature_error = 0.0;
    /// Truncation point T and the tail indicator |phi(T)|^K / T there.
    double truncation = 0.0;
    double tail_bound = 0.0;
    /// The raw inversion fell outside [0, 1] and was clamped.
    bool clamped = false;
    double raw_value = 0.0;
};

/// P{ (1/K) sum_k I_k < R } for K independent sub-slots, each the PR mutual information of
/// `sub_dims`, by Gil-Pelaez inversion. K = 1 gives the PR outage of `sub_dims`.
GilPelaezResult outage_gil_pelaez_detailed(const ChannelDims& sub_dims, double rate, int k_parts, double rho,
                                           const GilPelaezPlan& plan = {});

double outage_gil_pelaez(const ChannelDims& sub_dims, double rate, int k_parts, double rho,
                         const GilPelaezPlan& plan = {});

/// AR outage on a SISO link with each sub-slot gain replaced by an exponential of mean m.
double outage_ar_clt(double rate, int k_parts, int m, double rho);

/// 1 - exp(-(2^R - 1) / (rho Q)).
double outage_pr_siso(double rate, double rho, int q);

/// Correlated-Rayleigh surrogate of the FR sub-slot gains on a SISO link.
struct CorrelatedGainModel {
    int q = 0;
    int k_parts = 0;
    int m = 0;
    /// Number of elements whose sign differs between two sub-slots.
    int b = 0;
    double zeta = 0.0;
    /// Q (1 - zeta).
    double omega = 0.0;
    /// Per-sub-slot gain variance, equal to Q.
    double sigma_sq = 0.0;
    /// Value of zeta as Q grows with K fixed.
    double zeta_limit = 0.0;

    /// Same model with a caller-chosen correlation; omega follows.
    CorrelatedGainModel with_zeta(double z) const;
};

CorrelatedGainModel corr_coeff(int q, int k_parts, int m);

struct FrQuadratureSpec {
    double absolute_tolerance = 1e-11;
    double relative_tolerance = 1e-8;
    int max_panels = 2000;
    /// Integral dimension is K - 1; larger K is refused.
    int max_parts = 4;
};

/// FR outage on a SISO link under the correlated-Rayleigh surrogate, by nested quadrature.
double outage_fr_siso(double rate, int k_parts, int m, double rho, const FrQuadratureSpec& spec = {});
double outage_fr_siso(const CorrelatedGainModel& model, double rate, double rho, const FrQuadratureSpec& spec = {});

/// Lower bound on FR outage: AR outage with K independent sub-slots of all Q elements.
/// SISO links use the exponential-gain form, MIMO links Gil-Pelaez.
double outage_fr_bound(const ChannelDims& dims, double rate, int k_parts, double rho,
                       const GilPelaezPlan& plan = {});

}  // namespace rislab
