#include <cmath>

#include "rislab/errors.hpp"
#include "rislab/montecarlo.hpp"

namespace rislab {

SlopeFit estimate_dmt_slope(const ChannelDims& dims, const SchemeConfig& config, double rate,
                            std::span<const double> snr_db, std::span<const std::uint64_t> trials,
                            RngSpec rng, RunOptions options) {
    if (snr_db.size() < 3) throw DomainError("slope window needs at least three SNR points");
    if (trials.size() != 1 && trials.size() != snr_db.size()) {
        throw DomainError("trial schedule must hold one count or one count per SNR point");
    }

    bool increasing = true;
    for (std::size_t i = 1; i < snr_db.size(); ++i) increasing = increasing && snr_db[i] > snr_db[i - 1];

    SlopeFit fit;
    auto add_point = [&](double db, const OutageEstimate& est) {
        fit.points.push_back(SlopePoint{db, est, est.p_hat > 10.0 / static_cast<double>(est.trials)});
    };
    if (trials.size() == 1 && increasing) {
        // One shared set of draws serves every point of the window.
        const auto all = estimate_outage(dims, config, SnrGrid::from_db(snr_db, rate), trials[0], rng, options);
        for (std::size_t i = 0; i < snr_db.size(); ++i) add_point(snr_db[i], all[i]);
    } else {
        for (std::size_t i = 0; i < snr_db.size(); ++i) {
            const std::uint64_t n = trials.size() == 1 ? trials[0] : trials[i];
            const double db = snr_db[i];
            add_point(db, estimate_outage(dims, config, SnrGrid::from_db(std::span(&db, 1), rate), n, rng, options).front());
        }
    }

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, count = 0.0;
    for (const SlopePoint& p : fit.points) {
        if (!p.valid) continue;
        const double x = std::log10(p.estimate.rho);
        const double y = -std::log10(p.estimate.p_hat);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        count += 1.0;
    }
    if (count < 2.0) {
        throw InsufficientDataError("fewer than two SNR points have ten or more outage events");
    }
    const double denom = count * sxx - sx * sx;
    fit.slope = (count * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / count;

    double ss = 0.0;
    for (const SlopePoint& p : fit.points) {
        if (!p.valid) continue;
        const double resid = -std::log10(p.estimate.p_hat) - (fit.intercept + fit.slope * std::log10(p.estimate.rho));
        ss += resid * resid;
    }
    fit.residual_rms = std::sqrt(ss / count);
    return fit;
}

}  // namespace rislab
