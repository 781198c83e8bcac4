#include <algorithm>
#include <vector>

#include "doctest.h"
#include "rislab/dmt.hpp"
#include "rislab/errors.hpp"

using namespace rislab;

namespace {

std::vector<DmtVertex> v(std::initializer_list<std::array<int, 2>> pts) {
    std::vector<DmtVertex> out;
    for (auto [r, d] : pts) out.push_back({r, d});
    return out;
}

std::vector<int> divisors(int q) {
    std::vector<int> out;
    for (int k = 1; k <= q; ++k) {
        if (q % k == 0) out.push_back(k);
    }
    return out;
}

}  // namespace

TEST_SUITE("dmt") {

TEST_CASE("reference curves") {
    CHECK(dmt_pr(ChannelDims(3, 5, 3)).vertices == v({{0, 9}, {1, 4}, {2, 1}, {3, 0}}));
    CHECK(dmt_pr(ChannelDims(2, 3, 2)).at(0) == 4);
    CHECK(dmt_pr(ChannelDims(1, 16, 1)).vertices == v({{0, 1}, {1, 0}}));

    const ChannelDims big(3, 10, 3);
    const DmtCurve fr = dmt_fr_lower_bound(big, PartitionPlan::contiguous(10, 10));
    CHECK(fr.at(0) == 30);
    CHECK(fr.max_r() == 3);
    CHECK(dmt_cutset(big).vertices == v({{0, 30}, {1, 18}, {2, 8}, {3, 0}}));

    const DmtCurve ar = dmt_ar(ChannelDims(1, 16, 1), PartitionPlan::contiguous(16, 2));
    CHECK(ar.vertices == v({{0, 2}, {1, 0}}));
    CHECK(ar.at(5) == 0);
    CHECK_THROWS_AS(dmt_ar(big, PartitionPlan::contiguous(12, 2)), DomainError);
}

TEST_CASE("curve shape invariants") {
    for (int n = 1; n <= 4; ++n) {
        for (int l = 1; l <= 4; ++l) {
            for (int q = 1; q <= 12; ++q) {
                const ChannelDims d(n, q, l);
                for (int k : divisors(q)) {
                    const PartitionPlan plan = PartitionPlan::contiguous(q, k);
                    for (const DmtCurve& c : {dmt_pr(d), dmt_ar(d, plan), dmt_fr_lower_bound(d, plan), dmt_cutset(d)}) {
                        CAPTURE(c.label);
                        for (std::size_t i = 0; i < c.vertices.size(); ++i) {
                            CHECK(c.vertices[i].r == static_cast<int>(i));
                            CHECK(c.vertices[i].d >= 0);
                            if (i > 0) CHECK(c.vertices[i].d <= c.vertices[i - 1].d);
                        }
                    }
                    CHECK(dmt_pr(d).vertices.back().d == 0);
                    CHECK(dmt_ar(d, plan).vertices.back().d == 0);
                }
            }
        }
    }
}

TEST_CASE("AR with one part is PR") {
    for (int n = 1; n <= 4; ++n) {
        for (int l = 1; l <= 4; ++l) {
            for (int q = 1; q <= 12; ++q) {
                const ChannelDims d(n, q, l);
                CHECK(dmt_ar(d, PartitionPlan::contiguous(q, 1)).vertices == dmt_pr(d).vertices);
            }
        }
    }
}

TEST_CASE("PR curve depends only on the sorted triple") {
    CHECK(dmt_pr(ChannelDims(2, 5, 3)).vertices == dmt_pr(ChannelDims(5, 3, 2)).vertices);
    CHECK(dmt_pr(ChannelDims(4, 1, 2)).vertices == dmt_pr(ChannelDims(1, 2, 4)).vertices);
}

TEST_CASE("full diversity NL once Q >= N + L - 1") {
    for (int n = 1; n <= 4; ++n) {
        for (int l = 1; l <= 4; ++l) {
            for (int q = n + l - 1; q <= 12; ++q) CHECK(dmt_pr(ChannelDims(n, q, l)).at(0) == n * l);
        }
    }
}

TEST_CASE("vertical reduction") {
    for (int n = 1; n <= 4; ++n) {
        for (int l = 1; l <= 4; ++l) {
            const int q_min = n + l - 1;
            const auto base = dmt_pr(ChannelDims(n, q_min, l)).vertices;
            for (int q = q_min + 1; q <= 20; ++q) {
                CAPTURE(q);
                CHECK(dmt_pr(ChannelDims(n, q, l)).vertices == base);
            }
        }
    }
}

TEST_CASE("FR lower bound dominates AR and PR and stays below the cut-set") {
    for (int n = 1; n <= 4; ++n) {
        for (int l = 1; l <= 4; ++l) {
            for (int q = 1; q <= 12; ++q) {
                const ChannelDims d(n, q, l);
                const DmtCurve cut = dmt_cutset(d);
                const DmtCurve pr = dmt_pr(d);
                for (int k : divisors(q)) {
                    const PartitionPlan plan = PartitionPlan::contiguous(q, k);
                    const DmtCurve ar = dmt_ar(d, plan);
                    const DmtCurve fr = dmt_fr_lower_bound(d, plan);
                    for (int r = 0; r <= d.n0(); ++r) {
                        CHECK(fr.at(r) >= ar.at(r));
                        CHECK(fr.at(r) >= pr.at(r));
                        CHECK(fr.at(r) <= cut.at(r));
                    }
                }
            }
        }
    }
}

TEST_CASE("cut-set summary") {
    const AsymptoticSummary s = cutset_summary(ChannelDims(1, 60, 1), 1.0);
    CHECK(s.d_max == 60);
    CHECK(s.r_max == 1);
    REQUIRE(s.coding_gain.has_value());
    CHECK(*s.coding_gain == doctest::Approx(1.0 / 60.0));
    CHECK(s.partition_window == std::vector<int>{1});

    const AsymptoticSummary m = cutset_summary(ChannelDims(3, 10, 3), 1.0);
    CHECK(m.d_max == 30);
    CHECK(m.r_max == 3);
    CHECK_FALSE(m.coding_gain.has_value());
    CHECK(m.partition_window.empty());

    CHECK(cutset_summary(ChannelDims(1, 12, 4), 1.0).partition_window == std::vector<int>{1, 2, 3, 4});
    CHECK_THROWS_AS(cutset_summary(ChannelDims(1, 12, 4), -1.0), DomainError);
}

TEST_CASE("partition verdict agrees with the AR curve") {
    for (int n = 1; n <= 4; ++n) {
        for (int l = 1; l <= 4; ++l) {
            for (int q = 1; q <= 12; ++q) {
                const ChannelDims d(n, q, l);
                const AsymptoticSummary s = cutset_summary(d, 1.0);
                for (int m : divisors(q)) {
                    CAPTURE(m);
                    CAPTURE(n);
                    CAPTURE(l);
                    CAPTURE(q);
                    const DmtCurve ar = dmt_ar(d, PartitionPlan::contiguous(q, q / m));
                    const bool hits_d = ar.at(0) == s.d_max;
                    const bool hits_r = ar.max_r() == s.r_max;
                    const PartitionVerdict verdict = check_partition_condition(d, m);
                    CHECK((verdict == PartitionVerdict::BothExtremes) == (hits_d && hits_r));
                    CHECK((verdict == PartitionVerdict::DiversityOnly) == (hits_d && !hits_r));
                    CHECK((verdict == PartitionVerdict::MultiplexingOnly) == (!hits_d && hits_r));
                    const bool in_window =
                        std::find(s.partition_window.begin(), s.partition_window.end(), m) != s.partition_window.end();
                    // The window presumes the surface is at least as large as the smaller array.
                    if (q >= std::min(n, l)) CHECK(in_window == (verdict == PartitionVerdict::BothExtremes));
                }
            }
        }
    }
    CHECK(check_partition_condition(ChannelDims(4, 8, 1), 2) == PartitionVerdict::BothExtremes);
    CHECK(check_partition_condition(ChannelDims(3, 10, 3), 1) == PartitionVerdict::DiversityOnly);
    CHECK(check_partition_condition(ChannelDims(3, 10, 3), 5) == PartitionVerdict::MultiplexingOnly);
    CHECK(check_partition_condition(ChannelDims(3, 10, 3), 2) == PartitionVerdict::Neither);
    CHECK_THROWS_AS(check_partition_condition(ChannelDims(2, 6, 2), 4), DomainError);
    CHECK(std::string(to_string(PartitionVerdict::DiversityOnly)) == "d_max only");
}

}  // TEST_SUITE
