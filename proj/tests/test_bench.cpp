#include <gtest/gtest.h>

#include <filesystem>
#include <numeric>
#include <sstream>

#include "fabba/bench.hpp"
#include "fabba/compression.hpp"
#include "fabba/io.hpp"
#include "oracles.hpp"

using namespace fabba;
using fabba::testing::Rng;

namespace {

double rho_at(const ProfileCurves& c, std::size_t solver, double theta) {
    for (std::size_t t = 0; t < c.thetas.size(); ++t) {
        if (c.thetas[t] == theta) return c.rho[solver][t];
    }
    ADD_FAILURE() << "theta " << theta << " not on grid";
    return -1.0;
}

std::vector<CorpusEntry> mixed_corpus(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<CorpusEntry> out;
    for (std::size_t i = 0; i < count; ++i) {
        CorpusEntry e;
        e.id = "s/" + std::to_string(i);
        if (i % 2 == 0) {
            std::vector<double> v = fabba::testing::sine_wave(400 + 25 * i, 2.0 + i % 5, 1.0, rng.uniform(0, 3)).data();
            for (auto& x : v) x += 0.02 * rng.normal();
            e.series = TimeSeries(std::move(v));
        } else {
            e.series = fabba::testing::random_walk(rng, 400 + 25 * i);
        }
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

TEST(Escalation, RampUsesStartTolerance) {
    std::vector<double> v(200);
    std::iota(v.begin(), v.end(), 0.0);
    const auto e = escalate_tolerance(TimeSeries(v));
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->tol, 0.05);
    EXPECT_EQ(e->pieces.size(), 1u);
}

TEST(Escalation, WhiteNoiseExcluded) {
    Rng rng(81);
    int excluded = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> v(100);
        for (auto& x : v) x = rng.normal();
        if (!escalate_tolerance(TimeSeries(v))) ++excluded;
    }
    EXPECT_GE(excluded, 19);
}

TEST(Escalation, SmoothSineMeetsTarget) {
    const TimeSeries s = fabba::testing::sine_wave(1000, 3.0);
    const auto e = escalate_tolerance(s);
    ASSERT_TRUE(e.has_value());
    EXPECT_LE(e->tol, 0.5);
    EXPECT_LE(static_cast<double>(e->pieces.size()) / 999.0, 0.2);
    EXPECT_EQ(e->pieces, compress(s, {.tol = e->tol}));
}

TEST(EscalationProperty, ToleranceIsMinimal) {
    Rng rng(82);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const TimeSeries s = fabba::testing::random_walk(rng, 300 + rng.index(700), rng.uniform(0.02, 0.5));
        const auto e = escalate_tolerance(s);
        if (!e || e->tol < 0.1 - 1e-12) continue;
        const auto prev = compress(s, {.tol = e->tol - 0.05});
        EXPECT_GT(static_cast<double>(prev.size()) / static_cast<double>(s.size() - 1), 0.2);
        ++checked;
    }
    EXPECT_GT(checked, 5);
}

TEST(Profile, SingleSolverIsOne) {
    ProfileTable t{{"A"}, {"p1", "p2", "p3"}, {{0.5, 2.0, 7.0}}, {}};
    const std::vector<double> thetas{1.0001, 2.0, 10.0};
    const auto c = performance_profile(t, thetas);
    for (double r : c.rho[0]) EXPECT_EQ(r, 1.0);
}

TEST(Profile, HandComputedTwoByTwo) {
    ProfileTable t{{"A", "B"}, {"p1", "p2"}, {{1, 2}, {2, 1}}, {}};
    const std::vector<double> thetas{1.0, 1.5, 2.0, 3.0};
    const auto c = performance_profile(t, thetas);
    EXPECT_EQ(rho_at(c, 0, 1.5), 0.5);
    EXPECT_EQ(rho_at(c, 1, 1.5), 0.5);
    EXPECT_EQ(rho_at(c, 0, 3.0), 1.0);
    EXPECT_EQ(rho_at(c, 1, 3.0), 1.0);
    EXPECT_EQ(rho_at(c, 0, 1.0), 0.0);  // strict r < theta
    EXPECT_EQ(rho_at(c, 0, 2.0), 0.5);
}

TEST(Profile, AlwaysFailingSolverIsZero) {
    ProfileTable t{{"A", "B"}, {"p1", "p2"}, {{1, 2}, {0, 0}}, {{1, 0}, {1, 1}}};
    const std::vector<double> thetas{1.5, 100.0, 1e9};
    const auto c = performance_profile(t, thetas);
    for (double r : c.rho[1]) EXPECT_EQ(r, 0.0);
    for (double r : c.rho[0]) EXPECT_EQ(r, 1.0);
}

TEST(Profile, AllFailingProblemThrows) {
    ProfileTable t{{"A", "B"}, {"p1"}, {{1}, {1}}, {{0, 0}, {1, 0}}};
    const std::vector<double> thetas{2.0};
    EXPECT_THROW((void)performance_profile(t, thetas), Error);
}

TEST(Profile, ZeroBestScore) {
    ProfileTable t{{"A", "B"}, {"p1"}, {{0.0}, {0.5}}, {}};
    const std::vector<double> thetas{1.5, 1e12};
    const auto c = performance_profile(t, thetas);
    EXPECT_EQ(c.rho[0], (std::vector<double>{1.0, 1.0}));
    EXPECT_EQ(c.rho[1], (std::vector<double>{0.0, 0.0}));
}

TEST(ProfileProperty, MonotoneWithFailureLimit) {
    Rng rng(83);
    const auto thetas = theta_grid(50.0, 200);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t solvers = 1 + rng.index(5);
        const std::size_t problems = 1 + rng.index(30);
        ProfileTable t;
        for (std::size_t i = 0; i < solvers; ++i) t.solvers.push_back("s" + std::to_string(i));
        for (std::size_t j = 0; j < problems; ++j) t.problems.push_back("p" + std::to_string(j));
        t.scores.assign(solvers, std::vector<double>(problems));
        for (auto& row : t.scores) {
            for (auto& s : row) s = rng.uniform(0.1, 4.0);
        }
        for (std::size_t j = 0; j < problems; ++j) {
            for (std::size_t i = 1; i < solvers; ++i) {
                if (rng.uniform() < 0.2) t.failures.insert({i, j});
            }
        }
        const auto c = performance_profile(t, thetas);
        bool someone_positive = false;
        for (std::size_t i = 0; i < solvers; ++i) {
            for (std::size_t k = 1; k < thetas.size(); ++k) EXPECT_LE(c.rho[i][k - 1], c.rho[i][k]);
            std::size_t ok = 0;
            for (std::size_t j = 0; j < problems; ++j) ok += t.failures.contains({i, j}) ? 0 : 1;
            EXPECT_EQ(c.rho[i].back(), static_cast<double>(ok) / static_cast<double>(problems));
            if (c.rho[i][1] > 0.0) someone_positive = true;
        }
        EXPECT_TRUE(someone_positive);
    }
}

TEST(ThetaGrid, EndPoints) {
    const auto g = theta_grid(10.0, 10);
    ASSERT_EQ(g.size(), 10u);
    EXPECT_EQ(g.front(), 1.0);
    EXPECT_EQ(g.back(), 10.0);
    EXPECT_THROW((void)theta_grid(0.5, 10), Error);
}

TEST(Comparison, RampReconstructedByPieceMethods) {
    std::vector<double> v(300);
    std::iota(v.begin(), v.end(), 0.0);
    const std::vector<CorpusEntry> corpus{{"ramp/0", std::nullopt, TimeSeries(v)}};
    const auto result = run_comparison(corpus, {});
    ASSERT_EQ(result.rows.size(), 4u);
    for (const auto& row : result.rows) {
        EXPECT_EQ(row.n, 1u);
        EXPECT_EQ(row.k, 1u);
    }
    EXPECT_LT(result.rows[0].report.euclid, 1e-9);  // fABBA
    EXPECT_LT(result.rows[1].report.euclid, 1e-9);  // ABBA
    const auto curves = performance_profile(profile_table(result, ErrorMetric::euclid), theta_grid(10.0, 10));
    EXPECT_EQ(curves.rho[0].back(), 1.0);
    EXPECT_EQ(curves.rho[1].back(), 1.0);
}

TEST(Comparison, SameNAndKAndFabbaBeatsSax) {
    const auto corpus = mixed_corpus(20, 84);
    const auto result = run_comparison(corpus, {.alpha = 0.1});
    ASSERT_EQ(result.rows.size() + 4 * result.excluded.size(), 80u);
    std::size_t wins = 0;
    std::size_t series = 0;
    for (std::size_t r = 0; r + 3 < result.rows.size(); r += 4) {
        for (std::size_t m = 0; m < 4; ++m) {
            EXPECT_EQ(result.rows[r + m].method, kMethodNames[m]);
            EXPECT_EQ(result.rows[r + m].n, result.rows[r].n);
            EXPECT_EQ(result.rows[r + m].k, result.rows[r].k);
            EXPECT_EQ(result.rows[r + m].series_id, result.rows[r].series_id);
        }
        ++series;
        if (result.rows[r].report.dtw <= result.rows[r + 2].report.dtw) ++wins;
    }
    EXPECT_GE(static_cast<double>(wins), 0.7 * static_cast<double>(series));
}

TEST(Comparison, ParallelMatchesSerial) {
    const auto corpus = mixed_corpus(8, 85);
    const auto a = run_comparison(corpus, {.jobs = 1});
    const auto b = run_comparison(corpus, {.jobs = 4});
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].series_id, b.rows[i].series_id);
        EXPECT_EQ(a.rows[i].report.euclid, b.rows[i].report.euclid);
        EXPECT_EQ(a.rows[i].k, b.rows[i].k);
    }
}

TEST(Sweep, SingleSeriesMatchesComparison) {
    const auto corpus = mixed_corpus(1, 86);
    const std::vector<double> alphas{0.2};
    const std::vector<SortKind> sortings{SortKind::norm_2};
    const auto rows = parameter_sweep(corpus, alphas, sortings);
    ASSERT_EQ(rows.size(), 1u);
    const auto cmp = run_comparison(corpus, {.alpha = 0.2});
    const auto& f = cmp.rows[0];
    EXPECT_EQ(rows[0].series, 1u);
    EXPECT_EQ(rows[0].mean_k, static_cast<double>(f.k));
    EXPECT_EQ(rows[0].mean_tau_d, f.report.tau_d);
    EXPECT_EQ(rows[0].mean_euclid, f.report.euclid);
    EXPECT_EQ(rows[0].mean_dtw, f.report.dtw);
    EXPECT_EQ(rows[0].mean_dist, static_cast<double>(f.report.dist_count));
}

TEST(Sweep, SymbolsShrinkAsAlphaGrows) {
    const auto corpus = mixed_corpus(12, 87);
    std::vector<double> alphas;
    for (int i = 1; i <= 9; ++i) alphas.push_back(0.1 * i);
    const std::vector<SortKind> sortings{SortKind::norm_2, SortKind::norm_1};
    const auto rows = parameter_sweep(corpus, alphas, sortings);
    ASSERT_EQ(rows.size(), 18u);
    std::size_t ok = 0;
    for (std::size_t i = 1; i < 9; ++i) ok += rows[i].mean_k <= rows[i - 1].mean_k ? 1 : 0;
    EXPECT_GE(ok, 8u);
    for (std::size_t i = 0; i < 9; ++i) {
        EXPECT_EQ(rows[i].sorting, SortKind::norm_2);
        EXPECT_EQ(rows[9 + i].sorting, SortKind::norm_1);
        const double a = rows[i].mean_euclid;
        const double b = rows[9 + i].mean_euclid;
        EXPECT_LE(std::abs(a - b), 0.2 * std::max(a, b)) << "alpha " << alphas[i];
    }
}

TEST(Corpus, LoadsTsvAndCsv) {
    const auto dir = std::filesystem::temp_directory_path() / "fabba_corpus_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    write_text_file(dir / "b.tsv", "1\t0\t1\t2\tNaN\tNaN\n2\t5\t4\t3\t2\n");
    write_text_file(dir / "a.csv", "1,2,3\n");
    write_text_file(dir / "notes.txt", "ignored");
    const auto corpus = load_corpus(dir);
    ASSERT_EQ(corpus.size(), 3u);
    EXPECT_EQ(corpus[0].id, "a/0");
    EXPECT_FALSE(corpus[0].label.has_value());
    EXPECT_EQ(corpus[1].id, "b/0");
    EXPECT_EQ(corpus[1].label, "1");
    EXPECT_EQ(corpus[1].series.data(), (std::vector<double>{0, 1, 2}));
    EXPECT_EQ(corpus[2].series.data(), (std::vector<double>{5, 4, 3, 2}));
    EXPECT_THROW((void)load_corpus_file(dir / "notes.txt"), Error);
    EXPECT_THROW((void)load_corpus(dir / "missing"), Error);
    std::filesystem::remove_all(dir);
}

TEST(CsvOutput, Headers) {
    std::ostringstream reports;
    write_reports_csv(reports, {});
    EXPECT_EQ(reports.str(), "series_id,method,n,k,tol,alpha,euclid,dtw,euclid_diff,dtw_diff,runtime_ms,dist_count\n");
    std::ostringstream profiles;
    write_profiles_csv(profiles, ProfileCurves{{1.0}, {"A"}, {{0.5}}});
    EXPECT_EQ(profiles.str(), "theta,solver,rho\n1,A,0.5\n");
    EXPECT_EQ(format_number(0.1), "0.1");
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) EXPECT_EQ(h, 1);
}
