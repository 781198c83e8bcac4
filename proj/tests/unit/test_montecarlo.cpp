#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "rislab/errors.hpp"
#include "rislab/montecarlo.hpp"
#include "rislab/specfun.hpp"

using namespace rislab;

namespace {

void check_same(const std::vector<OutageEstimate>& a, const std::vector<OutageEstimate>& b) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].outages == b[i].outages);
        CHECK(a[i].trials == b[i].trials);
        CHECK(a[i].p_hat == b[i].p_hat);
        CHECK(a[i].ci_low == b[i].ci_low);
        CHECK(a[i].ci_high == b[i].ci_high);
    }
}

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("Wilson interval") {
    const double z = kZ95;
    for (auto [s, n] : {std::array<std::uint64_t, 2>{0, 100}, {3, 1000}, {50, 100}, {100, 100}, {7, 7000000}}) {
        CAPTURE(s);
        const double p = static_cast<double>(s) / static_cast<double>(n);
        const double nn = static_cast<double>(n);
        const double centre = (p + z * z / (2 * nn)) / (1 + z * z / nn);
        const double half = z / (1 + z * z / nn) * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn));
        const WilsonInterval w = wilson_interval(s, n);
        CHECK(w.low == doctest::Approx(std::max(0.0, centre - half)).epsilon(1e-12));
        CHECK(w.high == doctest::Approx(std::min(1.0, centre + half)).epsilon(1e-12));
        CHECK(0.0 <= w.low);
        CHECK(w.low <= p);
        CHECK(p <= w.high);
        CHECK(w.high <= 1.0);
        const WilsonInterval mirror = wilson_interval(n - s, n);
        CHECK(w.low == doctest::Approx(1.0 - mirror.high).epsilon(1e-12));
    }
    CHECK(wilson_interval(0, 100).low == 0.0);
    CHECK_THROWS_AS(wilson_interval(1, 0), DomainError);
    CHECK_THROWS_AS(wilson_interval(5, 4), DomainError);
}

TEST_CASE("SNR grid") {
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(db_to_linear(-3.0) == doctest::Approx(std::pow(10.0, -0.3)));
    const std::vector<double> db{0.0, 10.0, 20.0};
    const SnrGrid g = SnrGrid::from_db(db, 1.5);
    CHECK(g.rho()[2] == doctest::Approx(100.0));
    CHECK(g.rate() == 1.5);
    CHECK_THROWS_AS(SnrGrid({1.0, 1.0}, 1.0), DomainError);
    CHECK_THROWS_AS(SnrGrid({2.0, 1.0}, 1.0), DomainError);
    CHECK_THROWS_AS(SnrGrid({0.0}, 1.0), DomainError);
    CHECK_THROWS_AS(SnrGrid({}, 1.0), DomainError);
    CHECK_THROWS_AS(SnrGrid({1.0}, -1.0), DomainError);
}

TEST_CASE("parallel kernel equals the serial reference") {
    const std::vector<double> db{0.0, 5.0, 10.0};
    const SnrGrid grid = SnrGrid::from_db(db, 1.0);
    struct Case {
        ChannelDims dims;
        SchemeConfig config;
    };
    const std::vector<Case> cases{
        {ChannelDims(1, 8, 1), SchemeConfig::pure_reflect(8)},
        {ChannelDims(1, 8, 1), SchemeConfig::make(SchemeKind::AR, 8, 2)},
        {ChannelDims(1, 8, 1), SchemeConfig::make(SchemeKind::FR, 8, 4)},
        {ChannelDims(1, 8, 1), SchemeConfig::passive_beamforming(8)},
        {ChannelDims(2, 4, 2), SchemeConfig::make(SchemeKind::FR, 4, 2)},
        {ChannelDims(3, 6, 2), SchemeConfig::make(SchemeKind::AR, 6, 3)},
    };
    for (const Case& c : cases) {
        CAPTURE(to_string(c.config.kind()));
        // 10001 is not a multiple of the block size.
        const auto par = estimate_outage(c.dims, c.config, grid, 10001, RngSpec{17});
        const auto ser = serial::estimate_outage(c.dims, c.config, grid, 10001, RngSpec{17});
        check_same(par, ser);
    }
}

TEST_CASE("results do not depend on the worker count") {
    const std::vector<double> db{5.0, 10.0};
    const SnrGrid grid = SnrGrid::from_db(db, 1.0);
    const ChannelDims d(2, 6, 2);
    const SchemeConfig fr = SchemeConfig::make(SchemeKind::FR, 6, 3);
    const auto one = estimate_outage(d, fr, grid, 30000, RngSpec{3}, RunOptions{1});
    for (int w : {4, 8}) check_same(one, estimate_outage(d, fr, grid, 30000, RngSpec{3}, RunOptions{w}));

    const auto corr1 = estimate_correlation(ChannelDims(1, 8, 1), PartitionPlan::contiguous(8, 2), 0, 1, 20000,
                                            RngSpec{9}, RunOptions{1});
    const auto corr8 = estimate_correlation(ChannelDims(1, 8, 1), PartitionPlan::contiguous(8, 2), 0, 1, 20000,
                                            RngSpec{9}, RunOptions{8});
    CHECK(corr1.coefficient == corr8.coefficient);
}

TEST_CASE("many-scheme batch equals single runs") {
    const std::vector<double> db{0.0, 10.0};
    const SnrGrid grid = SnrGrid::from_db(db, 1.0);
    const ChannelDims d(1, 12, 1);
    const std::vector<SchemeConfig> configs{SchemeConfig::pure_reflect(12), SchemeConfig::make(SchemeKind::AR, 12, 3),
                                            SchemeConfig::make(SchemeKind::FR, 12, 2),
                                            SchemeConfig::passive_beamforming(12)};
    const auto batch = estimate_outage_many(d, configs, grid, 9000, RngSpec{5});
    REQUIRE(batch.size() == configs.size());
    for (std::size_t c = 0; c < configs.size(); ++c) check_same(batch[c], estimate_outage(d, configs[c], grid, 9000, RngSpec{5}));
}

TEST_CASE("estimates are ordered and bounded") {
    const std::vector<double> db{0.0, 5.0, 10.0, 15.0};
    const SnrGrid grid = SnrGrid::from_db(db, 1.0);
    const auto est = estimate_outage(ChannelDims(1, 4, 1), SchemeConfig::pure_reflect(4), grid, 20000, RngSpec{1});
    for (std::size_t i = 0; i < est.size(); ++i) {
        CHECK(est[i].ci_low <= est[i].p_hat);
        CHECK(est[i].p_hat <= est[i].ci_high);
        CHECK(est[i].seed.master_seed == 1);
        // Common random numbers: outage events are nested as SNR grows.
        if (i > 0) CHECK(est[i].outages <= est[i - 1].outages);
    }
    CHECK_THROWS_AS(estimate_outage(ChannelDims(1, 4, 1), SchemeConfig::pure_reflect(8), grid, 10, RngSpec{1}),
                    DomainError);
    CHECK_THROWS_AS(estimate_outage(ChannelDims(2, 4, 1), SchemeConfig::passive_beamforming(4), grid, 10, RngSpec{1}),
                    UnsupportedConfiguration);
    CHECK_THROWS_AS(estimate_outage(ChannelDims(1, 4, 1), SchemeConfig::pure_reflect(4), grid, 0, RngSpec{1}),
                    DomainError);
}

TEST_CASE("PR SISO with one element matches the exponential law") {
    const std::vector<double> db{0.0, 10.0};
    const SnrGrid grid = SnrGrid::from_db(db, 1.0);
    const auto est = estimate_outage(ChannelDims(1, 1, 1), SchemeConfig::pure_reflect(1), grid, 200000, RngSpec{8});
    // |g h|^2 for unit complex Gaussians: P{|gh|^2 < x} = 1 - 2 sqrt(x) K1(2 sqrt(x)).
    for (std::size_t i = 0; i < 2; ++i) {
        const double x = 1.0 / grid.rho()[i];
        const double p = 1.0 - 2.0 * std::sqrt(x) * std::cyl_bessel_k(1.0, 2.0 * std::sqrt(x));
        CHECK(p >= est[i].ci_low - 0.1 * est[i].half_width());
        CHECK(p <= est[i].ci_high + 0.1 * est[i].half_width());
    }
}

TEST_CASE("correlation estimate and its guards") {
    const auto est = estimate_correlation(ChannelDims(1, 4, 1), PartitionPlan::contiguous(4, 2), 0, 1, 200000, RngSpec{2});
    CHECK(est.coefficient == doctest::Approx(1.0 / 3.0).epsilon(0.03));
    CHECK(est.standard_error > 0.0);
    CHECK_THROWS_AS(estimate_correlation(ChannelDims(1, 4, 1), PartitionPlan::contiguous(4, 2), 1, 1, 100, RngSpec{2}),
                    DomainError);
    CHECK_THROWS_AS(estimate_correlation(ChannelDims(2, 4, 1), PartitionPlan::contiguous(4, 2), 0, 1, 100, RngSpec{2}),
                    DomainError);
}

TEST_CASE("uncorrelated surrogate reduces to a product of shifted exponentials") {
    const std::vector<double> rho{1.0, 3.0};
    const SnrGrid grid(rho, 1.0);
    const int n = 200000;
    const auto est = estimate_surrogate_outage(4.0, 0.0, 2, grid, n, RngSpec{4});
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double p = product_shifted_exp_cdf(2, rho[i] * 4.0, 4.0);
        const double se = std::sqrt(p * (1 - p) / n);
        CHECK(std::abs(est[i].p_hat - p) <= 3.0 * se);
    }
    CHECK_THROWS_AS(estimate_surrogate_outage(4.0, 1.5, 2, grid, n, RngSpec{4}), DomainError);
}

TEST_CASE("slope estimator") {
    // The single-element cascade |g h|^2 has a log factor in its lower tail, so
    // the local slope only approaches one slowly.
    const std::vector<double> db{15.0, 20.0, 25.0, 30.0};
    const std::vector<std::uint64_t> trials{400000};
    const SlopeFit fit =
        estimate_dmt_slope(ChannelDims(1, 1, 1), SchemeConfig::pure_reflect(1), 1.0, db, trials, RngSpec{6});
    CHECK(fit.points.size() == 4);
    CHECK(fit.slope > 0.75);
    CHECK(fit.slope < 1.1);
    const std::vector<std::uint64_t> few{50};
    const std::vector<double> high{30.0, 35.0, 40.0};
    CHECK_THROWS_AS(estimate_dmt_slope(ChannelDims(1, 8, 1), SchemeConfig::pure_reflect(8), 1.0, high, few, RngSpec{6}),
                    InsufficientDataError);
    const std::vector<double> two{0.0, 5.0};
    CHECK_THROWS_AS(estimate_dmt_slope(ChannelDims(1, 1, 1), SchemeConfig::pure_reflect(1), 1.0, two, trials, RngSpec{6}),
                    DomainError);
}

}  // TEST_SUITE
