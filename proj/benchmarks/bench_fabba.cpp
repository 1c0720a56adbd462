#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "fabba/fabba.hpp"

namespace {

fabba::TimeSeries walk(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> step;
    std::vector<double> v(n);
    double x = 0.0;
    for (auto& e : v) e = (x += step(gen));
    return fabba::TimeSeries(std::move(v));
}

std::vector<fabba::ScaledPoint> blobs(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> noise;
    std::uniform_real_distribution<double> centre(-10.0, 10.0);
    std::vector<fabba::Point2> centres(10);
    for (auto& c : centres) c = {centre(gen), centre(gen)};
    std::vector<fabba::ScaledPoint> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = centres[i % centres.size()];
        out[i] = {c.x + noise(gen), c.y + noise(gen), i};
    }
    return out;
}

void BM_Aggregate(benchmark::State& state) {
    const auto kind = static_cast<fabba::SortKind>(state.range(0));
    const auto pts = blobs(static_cast<std::size_t>(state.range(1)), 7);
    std::uint64_t dist = 0;
    for (auto _ : state) {
        auto r = fabba::aggregate(pts, 0.5, kind);
        dist = r.dist_count;
        benchmark::DoNotOptimize(r);
    }
    state.counters["dist_per_point"] = static_cast<double>(dist) / static_cast<double>(pts.size());
    state.SetItemsProcessed(state.iterations() * state.range(1));
    state.SetLabel(std::string(fabba::to_string(kind)));
}
BENCHMARK(BM_Aggregate)->ArgsProduct({{0, 1, 2}, {1000, 10000, 100000}})->Unit(benchmark::kMicrosecond);

void BM_Compress(benchmark::State& state) {
    const auto s = walk(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(fabba::compress(s, {.tol = 0.5, .max_len = std::nullopt}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Compress)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);

void BM_DigitizeFabba(benchmark::State& state) {
    const auto pieces = fabba::compress(walk(static_cast<std::size_t>(state.range(0)), 5), {.tol = 0.5, .max_len = std::nullopt});
    for (auto _ : state) benchmark::DoNotOptimize(fabba::digitize(pieces, 0.1, 1.0, fabba::SortKind::norm_2));
    state.counters["pieces"] = static_cast<double>(pieces.size());
}
BENCHMARK(BM_DigitizeFabba)->Arg(2000)->Arg(6000)->Unit(benchmark::kMicrosecond);

void BM_DigitizeKMeans(benchmark::State& state) {
    const auto pieces = fabba::compress(walk(static_cast<std::size_t>(state.range(0)), 5), {.tol = 0.5, .max_len = std::nullopt});
    const std::size_t k = fabba::digitize(pieces, 0.1, 1.0, fabba::SortKind::norm_2).symbolic.codebook.size();
    for (auto _ : state) benchmark::DoNotOptimize(fabba::abba_digitize_fixed_k(pieces, k, 1.0, 0));
    state.counters["k"] = static_cast<double>(k);
}
BENCHMARK(BM_DigitizeKMeans)->Arg(2000)->Arg(6000)->Unit(benchmark::kMillisecond);

void BM_Dtw(benchmark::State& state) {
    const auto a = walk(static_cast<std::size_t>(state.range(0)), 1);
    const auto b = walk(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(fabba::dtw(a, b));
}
BENCHMARK(BM_Dtw)->Arg(500)->Arg(2000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
