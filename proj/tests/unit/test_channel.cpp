#include <cmath>
#include <numbers>
#include <set>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "rislab/channel.hpp"
#include "rislab/errors.hpp"
#include "rislab/rng.hpp"

using namespace rislab;

namespace {

// Triple loop sum_i g(r, i) c_i h(i, t).
CMatrix cascade_oracle(const ChannelRealization& ch, const ReflectionState& st) {
    const auto l = ch.g.rows();
    const auto q = ch.h.rows();
    const auto n = ch.h.cols();
    CMatrix out = CMatrix::Zero(l, n);
    for (Eigen::Index r = 0; r < l; ++r) {
        for (Eigen::Index t = 0; t < n; ++t) {
            for (Eigen::Index i = 0; i < q; ++i) {
                const cplx c = std::polar(st.amplitudes[static_cast<std::size_t>(i)], st.phases[static_cast<std::size_t>(i)]);
                out(r, t) += ch.g(r, i) * c * ch.h(i, t);
            }
        }
    }
    return out;
}

// log2 prod (1 + rho/n lambda) over eigenvalues of the L x L Gram matrix.
double mi_oracle(const CMatrix& eff, double rho, int n) {
    const Eigen::MatrixXcd gram = eff * eff.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    double sum = 0.0;
    for (double lam : es.eigenvalues()) sum += std::log2(1.0 + rho / n * std::max(lam, 0.0));
    return sum;
}

}  // namespace

TEST_SUITE("channel") {

TEST_CASE("dims are sorted and validated") {
    const ChannelDims d(4, 2, 3);
    CHECK(d.ordered() == std::array<int, 3>{2, 3, 4});
    CHECK(d.nu(0) == 0);
    CHECK(d.nu(1) == 1);
    CHECK(d.nu(2) == 2);
    CHECK_FALSE(d.is_siso());
    CHECK(ChannelDims(1, 60, 1).is_siso());
    CHECK_THROWS_AS(ChannelDims(0, 3, 1), DomainError);
    CHECK_THROWS_AS(ChannelDims(1, 3, -2), DomainError);
    CHECK_THROWS_AS(ChannelDims(1, 2000, 1), DomainError);
    CHECK_NOTHROW(ChannelDims(1, 2000, 1, 4096));
}

TEST_CASE("contiguous partition") {
    const PartitionPlan p = PartitionPlan::contiguous(12, 3);
    CHECK(p.k_parts() == 3);
    CHECK(p.elements_per_part() == 4);
    CHECK(p.members(1) == std::vector<int>{4, 5, 6, 7});
    std::set<int> seen;
    for (int k = 0; k < 3; ++k) {
        for (int e : p.members(k)) CHECK(seen.insert(e).second);
    }
    CHECK(seen.size() == 12);
    CHECK_THROWS_AS(PartitionPlan::contiguous(10, 3), DomainError);
    CHECK_THROWS_AS(PartitionPlan(2, {0, 0, 0, 1}), DomainError);
    CHECK_THROWS_AS(PartitionPlan(2, {0, 2, 1, 1}), DomainError);
    CHECK_NOTHROW(PartitionPlan(2, {1, 0, 1, 0}));
}

TEST_CASE("PR and PB use one part") {
    CHECK_THROWS_AS(SchemeConfig::make(SchemeKind::PR, 8, 2), DomainError);
    CHECK_THROWS_AS(SchemeConfig::make(SchemeKind::PB, 8, 4), DomainError);
    CHECK(SchemeConfig::make(SchemeKind::FR, 8, 4).sub_slots() == 4);
    CHECK(parse_scheme("fr") == SchemeKind::FR);
    CHECK_FALSE(parse_scheme("xx").has_value());
}

TEST_CASE("reflection states per scheme") {
    const SchemeConfig ar = SchemeConfig::make(SchemeKind::AR, 8, 4);
    for (int k = 0; k < 4; ++k) {
        const ReflectionState s = build_reflection(ar, k);
        for (int i = 0; i < 8; ++i) {
            CHECK(s.amplitudes[static_cast<std::size_t>(i)] == (i / 2 == k ? 1.0 : 0.0));
            CHECK(s.phases[static_cast<std::size_t>(i)] == 0.0);
        }
    }

    const SchemeConfig fr4 = SchemeConfig::make(SchemeKind::FR, 8, 4);
    for (int k = 0; k < 4; ++k) {
        const ReflectionState s = build_reflection(fr4, k);
        for (int i = 0; i < 8; ++i) {
            CHECK(s.amplitudes[static_cast<std::size_t>(i)] == 1.0);
            CHECK(s.phases[static_cast<std::size_t>(i)] == (i / 2 == k ? std::numbers::pi : 0.0));
        }
    }

    // Two parts: the first sub-slot keeps every element unflipped.
    const SchemeConfig fr2 = SchemeConfig::make(SchemeKind::FR, 6, 2);
    const ReflectionState s0 = build_reflection(fr2, 0);
    const ReflectionState s1 = build_reflection(fr2, 1);
    for (int i = 0; i < 6; ++i) {
        CHECK(s0.phases[static_cast<std::size_t>(i)] == 0.0);
        CHECK(s1.phases[static_cast<std::size_t>(i)] == (i >= 3 ? std::numbers::pi : 0.0));
    }

    const ReflectionState pr = build_reflection(SchemeConfig::pure_reflect(5), 0);
    for (double a : pr.amplitudes) CHECK(a == 1.0);
    CHECK_THROWS_AS(build_reflection(fr4, 4), DomainError);
    CHECK_THROWS_AS(build_reflection(fr4, -1), DomainError);
}

TEST_CASE("passive beamforming aligns every cascaded path") {
    const ChannelDims d(1, 16, 1);
    TrialStream stream(7, 3);
    const ChannelRealization ch = draw_channel(d, stream);
    const SchemeConfig pb = SchemeConfig::passive_beamforming(16);
    CHECK_THROWS_AS(build_reflection(pb, 0), DomainError);
    const ReflectionState s = build_reflection(pb, 0, &ch);
    double coherent = 0.0;
    for (int i = 0; i < 16; ++i) {
        CHECK(s.phases[static_cast<std::size_t>(i)] >= 0.0);
        CHECK(s.phases[static_cast<std::size_t>(i)] < 2.0 * std::numbers::pi);
        coherent += std::abs(ch.h(i, 0) * ch.g(0, i));
    }
    const CMatrix eff = effective_channel(ch, s);
    CHECK(eff(0, 0).real() == doctest::Approx(coherent).epsilon(1e-12));
    CHECK(std::abs(eff(0, 0).imag()) < 1e-12 * coherent);

    const ChannelDims mimo(2, 16, 2);
    TrialStream s2(7, 4);
    const ChannelRealization ch2 = draw_channel(mimo, s2);
    CHECK_THROWS_AS(build_reflection(pb, 0, &ch2), UnsupportedConfiguration);
}

TEST_CASE("effective channel and mutual information against dense oracles") {
    const SchemeConfig fr = SchemeConfig::make(SchemeKind::FR, 6, 3);
    for (const ChannelDims d : {ChannelDims(2, 6, 4), ChannelDims(4, 6, 2), ChannelDims(1, 6, 1), ChannelDims(3, 6, 3)}) {
        for (std::uint64_t trial = 0; trial < 5; ++trial) {
            TrialStream stream(99, trial);
            const ChannelRealization ch = draw_channel(d, stream);
            CHECK(ch.h.rows() == 6);
            CHECK(ch.h.cols() == d.tx());
            CHECK(ch.g.rows() == d.rx());
            for (int k = 0; k < 3; ++k) {
                const ReflectionState s = build_reflection(fr, k);
                const CMatrix eff = effective_channel(ch, s);
                CHECK((eff - cascade_oracle(ch, s)).norm() < 1e-12 * (1.0 + eff.norm()));
                for (double rho : {0.1, 10.0, 1e4}) {
                    const double mi = mutual_information_subslot(eff, rho, d.tx());
                    CHECK(mi == doctest::Approx(mi_oracle(eff, rho, d.tx())).epsilon(1e-11));
                }
            }
        }
    }
}

TEST_CASE("SISO mutual information is log2(1 + rho |h|^2)") {
    CMatrix eff(1, 1);
    eff(0, 0) = cplx(0.3, -1.2);
    CHECK(mutual_information_subslot(eff, 5.0, 1) == doctest::Approx(std::log2(1.0 + 5.0 * std::norm(eff(0, 0)))));
    CHECK(mutual_information_subslot(eff, 0.0, 1) == 0.0);
    CHECK_THROWS_AS(mutual_information_subslot(eff, -1.0, 1), DomainError);
    CHECK_THROWS_AS(mutual_information_subslot(eff, 1.0, 0), DomainError);
}

TEST_CASE("AR sub-slot channels sum to the PR channel") {
    const ChannelDims d(2, 12, 3);
    TrialStream stream(5, 0);
    const ChannelRealization ch = draw_channel(d, stream);
    const SchemeConfig ar = SchemeConfig::make(SchemeKind::AR, 12, 4);
    CMatrix sum = CMatrix::Zero(3, 2);
    for (int k = 0; k < 4; ++k) sum += effective_channel(ch, build_reflection(ar, k));
    const CMatrix pr = effective_channel(ch, build_reflection(SchemeConfig::pure_reflect(12), 0));
    CHECK((sum - pr).norm() < 1e-12);
}

TEST_CASE("slot mutual information averages the sub-slots") {
    const ChannelDims d(2, 8, 2);
    TrialStream stream(11, 2);
    const ChannelRealization ch = draw_channel(d, stream);
    const SchemeConfig fr = SchemeConfig::make(SchemeKind::FR, 8, 2);
    double avg = 0.0;
    for (int k = 0; k < 2; ++k) avg += mutual_information_subslot(effective_channel(ch, build_reflection(fr, k)), 10.0, 2);
    CHECK(slot_mutual_information(ch, fr, 10.0, 2) == doctest::Approx(avg / 2.0).epsilon(1e-14));
    const SchemeConfig pr = SchemeConfig::pure_reflect(8);
    CHECK(slot_mutual_information(ch, pr, 10.0, 2) ==
          doctest::Approx(mutual_information_subslot(effective_channel(ch, build_reflection(pr, 0)), 10.0, 2)));
}

TEST_CASE("trial streams are keyed by seed and index") {
    TrialStream a(1, 5), b(1, 5), c(1, 6), d(2, 5);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());

    double sum = 0.0, sq = 0.0, umin = 1.0, umax = 0.0;
    const int n = 200000;
    TrialStream s(42, 0);
    for (int i = 0; i < n; ++i) {
        const cplx z = s.complex_normal();
        sum += z.real();
        sq += std::norm(z);
        const double u = s.uniform();
        umin = std::min(umin, u);
        umax = std::max(umax, u);
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(sq / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(umin >= 0.0);
    CHECK(umax < 1.0);
}

}  // TEST_SUITE
