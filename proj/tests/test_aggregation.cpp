#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fabba/aggregation.hpp"
#include "oracles.hpp"

using namespace fabba;
using fabba::testing::OracleSort;
using fabba::testing::Rng;

namespace {

constexpr SortKind kAllKinds[] = {SortKind::lexicographic_binned, SortKind::norm_1, SortKind::norm_2};

OracleSort oracle_kind(SortKind k) {
    switch (k) {
        case SortKind::lexicographic_binned: return OracleSort::lexicographic;
        case SortKind::norm_1: return OracleSort::norm1;
        case SortKind::norm_2: return OracleSort::norm2;
    }
    return OracleSort::norm2;
}

std::vector<ScaledPoint> random_points(Rng& rng, std::size_t n, bool discrete_x) {
    std::vector<Point2> xy(n);
    for (auto& p : xy) {
        p.x = discrete_x ? static_cast<double>(1 + rng.index(12)) * 0.4 : rng.normal();
        p.y = rng.normal();
    }
    return fabba::testing::with_origins(xy);
}

}  // namespace

TEST(SortPoints, NormOrdering) {
    const auto pts = fabba::testing::with_origins({{3, 0}, {0, 1}, {0, -2}});
    EXPECT_EQ(sort_points(pts, SortKind::norm_2), (std::vector<std::size_t>{1, 2, 0}));
}

TEST(SortPoints, EqualPointsKeepIdentity) {
    const auto pts = fabba::testing::with_origins({{1, 1}, {1, 1}, {1, 1}, {1, 1}});
    for (SortKind k : kAllKinds) EXPECT_EQ(sort_points(pts, k), (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(SortPoints, AgreesWithFullSortOracle) {
    Rng rng(31);
    for (SortKind k : kAllKinds) {
        const auto pts = random_points(rng, 1000, k == SortKind::lexicographic_binned);
        EXPECT_EQ(sort_points(pts, k), fabba::testing::oracle_order(pts, oracle_kind(k))) << to_string(k);
    }
}

TEST(SortKindNames, ParseAndPrint) {
    for (SortKind k : kAllKinds) EXPECT_EQ(parse_sort_kind(to_string(k)), k);
    EXPECT_EQ(parse_sort_kind("norm_1"), SortKind::norm_1);
    EXPECT_THROW((void)parse_sort_kind("3-norm"), Error);
}

TEST(Aggregate, LargeAlphaGivesOneGroup) {
    Rng rng(32);
    const auto pts = random_points(rng, 50, false);
    for (SortKind k : kAllKinds) {
        const auto r = aggregate(pts, 100.0, k);
        EXPECT_EQ(r.groups(), 1u);
        for (auto l : r.labels) EXPECT_EQ(l, 0u);
    }
}

TEST(Aggregate, SpacedLineGivesSingletons) {
    std::vector<Point2> xy;
    for (int i = 0; i < 40; ++i) xy.push_back({0.6 * i, 0.8 * i});  // spacing 1 along a ray
    const auto pts = fabba::testing::with_origins(xy);
    const auto r = aggregate(pts, 0.5, SortKind::norm_2);
    EXPECT_EQ(r.groups(), 40u);
    EXPECT_EQ(r.dist_count, 0u);  // every scan stops at the first key gap
}

TEST(Aggregate, ThreeBlobsMatchNaiveSimulation) {
    const auto pts = fabba::testing::with_origins({{0.0, 0.0},
                                                   {0.1, 0.05},
                                                   {0.05, 0.12},
                                                   {0.15, 0.1},
                                                   {3.0, 0.0},
                                                   {3.1, 0.1},
                                                   {0.0, 4.0},
                                                   {0.1, 4.1},
                                                   {-0.1, 3.95}});
    for (SortKind k : kAllKinds) {
        const auto r = aggregate(pts, 0.3, k);
        EXPECT_EQ(r.groups(), 3u);
        EXPECT_EQ(r.labels, fabba::testing::naive_grouping(pts, 0.3, oracle_kind(k)).labels);
    }
}

TEST(Aggregate, NonPositiveAlphaThrows) {
    const auto pts = fabba::testing::with_origins({{0, 0}});
    EXPECT_THROW((void)aggregate(pts, 0.0, SortKind::norm_2), Error);
    EXPECT_THROW((void)aggregate(pts, -1.0, SortKind::norm_2), Error);
}

TEST(Aggregate, RejectsBadOriginIndices) {
    std::vector<ScaledPoint> pts{{0, 0, 0}, {1, 1, 0}};
    EXPECT_THROW((void)aggregate(pts, 0.5, SortKind::norm_2), Error);
}

TEST(Aggregate, InclusiveBoundary) {
    const auto pts = fabba::testing::with_origins({{0.0, 0.0}, {0.0, 0.5}});
    for (SortKind k : kAllKinds) EXPECT_EQ(aggregate(pts, 0.5, k).groups(), 1u);
}

TEST(Wcss, ZeroWhenOnCenters) {
    const auto pts = fabba::testing::with_origins({{1, 2}, {3, 4}});
    const std::vector<std::size_t> labels{0, 1};
    const std::vector<Point2> centers{{1, 2}, {3, 4}};
    EXPECT_EQ(wcss_from(pts, labels, centers), 0.0);
}

TEST(Wcss, TwoPointsAtMidpoint) {
    const double d = 3.0;
    const auto pts = fabba::testing::with_origins({{0, 0}, {d, 0}});
    const std::vector<std::size_t> labels{0, 0};
    const std::vector<Point2> centers{{d / 2, 0}};
    EXPECT_DOUBLE_EQ(wcss_from(pts, labels, centers), d * d / 2);
}

TEST(Wcss, MatchesDoubleLoopOracle) {
    Rng rng(33);
    const auto pts = random_points(rng, 300, false);
    std::vector<std::size_t> labels(pts.size());
    for (auto& l : labels) l = rng.index(7);
    std::vector<Point2> centers(7);
    for (auto& c : centers) c = {rng.normal(), rng.normal()};
    const double expect = fabba::testing::double_loop_wcss(pts, labels, centers);
    EXPECT_NEAR(wcss_from(pts, labels, centers), expect, 1e-10 * expect);
}

TEST(Wcss, LabelOutOfRangeThrows) {
    const auto pts = fabba::testing::with_origins({{0, 0}});
    const std::vector<std::size_t> labels{2};
    const std::vector<Point2> centers{{0, 0}};
    EXPECT_THROW((void)wcss_from(pts, labels, centers), Error);
}

TEST(GroupVariances, SingletonIsZero) {
    const auto pts = fabba::testing::with_origins({{5, 5}});
    const std::vector<std::size_t> labels{0};
    const std::vector<Point2> centers{{5, 5}};
    EXPECT_EQ(group_variances(pts, labels, centers), (std::vector<double>{0.0}));
}

TEST(GroupVariances, MatchesOracle) {
    Rng rng(34);
    const auto pts = random_points(rng, 200, false);
    std::vector<std::size_t> labels(pts.size());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i % 5;
    const auto centers = fabba::testing::group_means(pts, labels, 5);
    const auto var = group_variances(pts, labels, centers);
    for (std::size_t g = 0; g < 5; ++g) {
        double ss = 0.0;
        double count = 0.0;
        for (const auto& p : pts) {
            if (labels[p.origin_index] != g) continue;
            ss += std::pow(p.x - centers[g].x, 2) + std::pow(p.y - centers[g].y, 2);
            count += 1.0;
        }
        EXPECT_NEAR(var[g], ss / count, 1e-12 * (1.0 + ss / count));
    }
}

TEST(AggregateProperty, OracleEquivalenceAndInvariants) {
    Rng rng(35);
    for (int trial = 0; trial < 150; ++trial) {
        const SortKind kind = kAllKinds[trial % 3];
        const std::size_t n = 1 + rng.index(300);
        const auto pts = random_points(rng, n, trial % 2 == 0);
        const double alpha = rng.uniform(0.05, 1.5);
        const auto r = aggregate(pts, alpha, kind);
        const auto naive = fabba::testing::naive_grouping(pts, alpha, oracle_kind(kind));
        ASSERT_EQ(r.labels, naive.labels) << "trial " << trial;

        std::size_t total = 0;
        for (auto s : r.group_sizes) total += s;
        EXPECT_EQ(total, n);
        EXPECT_EQ(r.starting_points.size(), r.groups());
        for (std::size_t g = 1; g < r.starting_points.size(); ++g) {
            EXPECT_LT(r.starting_points[g - 1], r.starting_points[g]);
        }
        EXPECT_LE(r.dist_count, n * (n - 1) / 2);

        for (double v : group_variances(pts, r.labels, r.centers)) EXPECT_LE(v, alpha * alpha);
        const auto sp = starting_point_coords(pts, r);
        const double wcss_sp = wcss_from(pts, r.labels, sp);
        const double wcss_mu = wcss_from(pts, r.labels, r.centers);
        EXPECT_LE(wcss_sp, alpha * alpha * static_cast<double>(n - r.groups()));
        EXPECT_LE(wcss_mu, alpha * alpha * static_cast<double>(n));
        EXPECT_LE(wcss_mu, wcss_sp);
    }
}

TEST(AggregateProperty, Deterministic) {
    Rng rng(36);
    const auto pts = random_points(rng, 500, true);
    for (SortKind k : kAllKinds) {
        const auto a = aggregate(pts, 0.4, k);
        const auto b = aggregate(pts, 0.4, k);
        EXPECT_EQ(a.labels, b.labels);
        EXPECT_EQ(a.centers, b.centers);
        EXPECT_EQ(a.dist_count, b.dist_count);
        EXPECT_EQ(a.sorted_order, b.sorted_order);
    }
}

TEST(AggregateProperty, CentersAreGroupMeans) {
    Rng rng(37);
    const auto pts = random_points(rng, 400, false);
    const auto r = aggregate(pts, 0.5, SortKind::norm_2);
    const auto expect = fabba::testing::group_means(pts, r.labels, r.groups());
    for (std::size_t g = 0; g < r.groups(); ++g) {
        EXPECT_NEAR(r.centers[g].x, expect[g].x, 1e-12);
        EXPECT_NEAR(r.centers[g].y, expect[g].y, 1e-12);
    }
}
