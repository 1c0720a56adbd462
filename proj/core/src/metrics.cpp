#include "fabba/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

namespace fabba {

namespace {

void require_same_length(const TimeSeries& a, const TimeSeries& b) {
    if (a.size() != b.size()) {
        throw Error("series lengths differ");
    }
}

double sum_sq_diff(const TimeSeries& a, const TimeSeries& b) {
    require_same_length(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double choose2(double m) { return m * (m - 1.0) / 2.0; }

}  // namespace

double euclid(const TimeSeries& a, const TimeSeries& b) { return std::sqrt(sum_sq_diff(a, b)); }

double mse(const TimeSeries& a, const TimeSeries& b) {
    return sum_sq_diff(a, b) / static_cast<double>(a.size());
}

double dtw(const TimeSeries& a, const TimeSeries& b, DtwCost cost) {
    if (a.size() == 0 || b.size() == 0) {
        throw Error("empty series");
    }
    // Rows run over the longer series so the two rolling rows have min(len) + 1 cells.
    const TimeSeries& rows = a.size() >= b.size() ? a : b;
    const TimeSeries& cols = a.size() >= b.size() ? b : a;
    const std::size_t m = cols.size();
    constexpr double inf = std::numeric_limits<double>::infinity();

    std::vector<double> prev(m + 1, inf);
    std::vector<double> curr(m + 1, inf);
    prev[0] = 0.0;
    for (std::size_t i = 1; i <= rows.size(); ++i) {
        curr[0] = inf;
        const double ri = rows[i - 1];
        for (std::size_t j = 1; j <= m; ++j) {
            const double d = ri - cols[j - 1];
            const double local = cost == DtwCost::squared ? d * d : std::abs(d);
            curr[j] = local + std::min({prev[j], curr[j - 1], prev[j - 1]});
        }
        std::swap(prev, curr);
    }
    return cost == DtwCost::squared ? std::sqrt(prev[m]) : prev[m];
}

TimeSeries difference(const TimeSeries& series) {
    if (series.size() < 2) {
        throw Error("series too short to difference");
    }
    std::vector<double> out(series.size() - 1);
    for (std::size_t i = 0; i + 1 < series.size(); ++i) out[i] = series[i + 1] - series[i];
    return TimeSeries(std::move(out), series.name());
}

double adjusted_rand(std::span<const std::size_t> labels_a, std::span<const std::size_t> labels_b) {
    if (labels_a.size() != labels_b.size()) {
        throw Error("label sequences differ in length");
    }
    if (labels_a.size() < 2) {
        throw Error("adjusted Rand index needs at least two items");
    }
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> table;
    std::map<std::size_t, std::size_t> rows, cols;
    for (std::size_t i = 0; i < labels_a.size(); ++i) {
        ++table[{labels_a[i], labels_b[i]}];
        ++rows[labels_a[i]];
        ++cols[labels_b[i]];
    }

    double index = 0.0;
    for (const auto& [cell, count] : table) index += choose2(static_cast<double>(count));
    double sum_a = 0.0;
    for (const auto& [label, count] : rows) sum_a += choose2(static_cast<double>(count));
    double sum_b = 0.0;
    for (const auto& [label, count] : cols) sum_b += choose2(static_cast<double>(count));

    const double pairs = choose2(static_cast<double>(labels_a.size()));
    const double expected = sum_a * sum_b / pairs;
    const double max_index = 0.5 * (sum_a + sum_b);
    const double denom = max_index - expected;
    // Only reached when both partitions are all-singletons or both a single cluster.
    if (denom == 0.0) return 1.0;
    return (index - expected) / denom;
}

std::pair<double, double> rates(std::size_t n, std::size_t big_n, std::size_t k) {
    if (n < 1 || n > big_n || k < 1 || k > n) {
        throw Error("rates: need 1 <= n <= N and 1 <= k <= n");
    }
    return {static_cast<double>(n) / static_cast<double>(big_n), static_cast<double>(k) / static_cast<double>(n)};
}

ReconstructionReport score_reconstruction(const TimeSeries& original, const TimeSeries& recon) {
    ReconstructionReport r;
    r.euclid = euclid(original, recon);
    r.mse = mse(original, recon);
    r.dtw = dtw(original, recon);
    if (original.size() >= 2) {
        const TimeSeries da = difference(original);
        const TimeSeries db = difference(recon);
        r.euclid_diff = euclid(da, db);
        r.dtw_diff = dtw(da, db);
    }
    return r;
}

}  // namespace fabba
