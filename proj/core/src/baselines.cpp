#include "fabba/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace fabba {

namespace {

double sq_dist(Point2 a, Point2 b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<Point2> seed_centers(std::span<const Point2> points, std::size_t k, std::mt19937_64& rng,
                                 std::uint64_t& dist_count) {
    const std::size_t n = points.size();
    std::vector<Point2> centers;
    centers.reserve(k);
    std::vector<bool> chosen(n, false);

    std::size_t first = std::min(n - 1, static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(n)));
    centers.push_back(points[first]);
    chosen[first] = true;

    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(points[i], points[first]);
    dist_count += n;

    while (centers.size() < k) {
        double total = 0.0;
        for (double v : d2) total += v;

        std::size_t pick = n;
        if (total > 0.0) {
            const double target = unit_uniform(rng) * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (d2[i] > 0.0 && acc > target) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) {
                for (std::size_t i = n; i-- > 0;) {
                    if (d2[i] > 0.0) {
                        pick = i;
                        break;
                    }
                }
            }
        } else {
            // Every point coincides with a center: take the next unused one.
            for (std::size_t i = 0; i < n; ++i) {
                if (!chosen[i]) {
                    pick = i;
                    break;
                }
            }
        }

        centers.push_back(points[pick]);
        chosen[pick] = true;
        for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], sq_dist(points[i], points[pick]));
        dist_count += n;
    }
    return centers;
}

void check_segments(std::size_t length, std::size_t n_segments) {
    if (n_segments < 1) throw Error("n_segments must be >= 1");
    if (n_segments > length) throw Error("n_segments exceeds series length");
}

struct Prepared {
    std::vector<double> values;
    double mean = 0.0;
    double std = 1.0;
};

Prepared prepare(const TimeSeries& series, bool normalize) {
    Prepared out;
    if (normalize) {
        Normalized z = znormalize(series);
        out.values = z.series.data();
        out.mean = z.mean;
        out.std = z.std;
    } else {
        out.values = series.data();
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- k-means++

KMeansResult kmeans_pp(std::span<const Point2> points, std::size_t k, std::uint64_t seed, std::size_t max_iter) {
    const std::size_t n = points.size();
    if (k < 1 || k > n) {
        throw Error("kmeans_pp: need 1 <= k <= number of points");
    }

    std::mt19937_64 rng(seed);
    KMeansResult result;
    result.centers = seed_centers(points, k, rng, result.dist_count);
    result.labels.assign(n, std::numeric_limits<std::size_t>::max());

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = sq_dist(points[i], result.centers[0]);
            for (std::size_t c = 1; c < k; ++c) {
                const double d = sq_dist(points[i], result.centers[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (result.labels[i] != best) {
                result.labels[i] = best;
                changed = true;
            }
            inertia += best_d;
        }
        result.dist_count += static_cast<std::uint64_t>(n) * k;
        result.inertia = inertia;
        result.inertia_history.push_back(inertia);
        result.iterations = iter + 1;
        if (!changed && iter > 0) break;

        std::vector<Point2> sums(k);
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            sums[result.labels[i]].x += points[i].x;
            sums[result.labels[i]].y += points[i].y;
            ++counts[result.labels[i]];
        }
        for (std::size_t c = 0; c < k; ++c) {
            // An empty cluster keeps its previous center.
            if (counts[c] == 0) continue;
            const double cnt = static_cast<double>(counts[c]);
            result.centers[c] = {sums[c].x / cnt, sums[c].y / cnt};
        }
    }
    return result;
}

KMeansResult kmeans_pp_restarts(std::span<const Point2> points, std::size_t k, std::uint64_t seed,
                                std::size_t restarts) {
    KMeansResult best = kmeans_pp(points, k, seed);
    std::uint64_t total = best.dist_count;
    for (std::size_t r = 1; r < restarts; ++r) {
        KMeansResult run = kmeans_pp(points, k, seed + r);
        total += run.dist_count;
        if (run.inertia < best.inertia) best = std::move(run);
    }
    best.dist_count = total;
    return best;
}

// ---------------------------------------------------------------- ABBA

double max_cluster_variance(std::span<const Piece> pieces, std::span<const std::size_t> labels, std::size_t k,
                            double scl) {
    if (labels.size() != pieces.size()) throw Error("labels and pieces differ in size");
    std::vector<double> sum_len(k, 0.0), sum_inc(k, 0.0);
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (labels[i] >= k) throw Error("label out of range");
        sum_len[labels[i]] += static_cast<double>(pieces[i].len);
        sum_inc[labels[i]] += pieces[i].inc;
        ++count[labels[i]];
    }
    std::vector<double> var_len(k, 0.0), var_inc(k, 0.0);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const std::size_t g = labels[i];
        const double cnt = static_cast<double>(count[g]);
        const double dl = static_cast<double>(pieces[i].len) - sum_len[g] / cnt;
        const double di = pieces[i].inc - sum_inc[g] / cnt;
        var_len[g] += dl * dl / cnt;
        var_inc[g] += di * di / cnt;
    }
    const double max_len = *std::max_element(var_len.begin(), var_len.end());
    const double max_inc = *std::max_element(var_inc.begin(), var_inc.end());
    return std::max(scl * max_len, max_inc);
}

bool satisfies_tolerance(std::span<const Piece> pieces, std::span<const std::size_t> labels, std::size_t k,
                         double scl, double tol_s) {
    return max_cluster_variance(pieces, labels, k, scl) <= tol_s * tol_s;
}

AbbaDigitization abba_digitize_fixed_k(std::span<const Piece> pieces, std::size_t k, double scl, std::uint64_t seed,
                                       std::size_t restarts) {
    const ScaledPieces scaled = scale_pieces(pieces, scl);
    std::vector<Point2> xy;
    xy.reserve(scaled.points.size());
    for (const ScaledPoint& p : scaled.points) xy.push_back(p.xy());

    KMeansResult km = kmeans_pp_restarts(xy, k, seed, std::max<std::size_t>(1, restarts));
    AbbaDigitization out;
    out.labels = std::move(km.labels);
    out.centers = std::move(km.centers);
    out.k = k;
    out.meta = scaled.meta;
    out.dist_count = km.dist_count;
    return out;
}

AbbaDigitization abba_digitize(std::span<const Piece> pieces, double tol_s, double scl, std::uint64_t seed,
                               std::size_t restarts) {
    if (!(tol_s > 0.0)) {
        throw Error("tol_s must be > 0");
    }
    if (pieces.empty()) {
        throw Error("no pieces to digitize");
    }
    std::uint64_t dist_total = 0;
    for (std::size_t k = 1; k <= pieces.size(); ++k) {
        AbbaDigitization run = abba_digitize_fixed_k(pieces, k, scl, seed, restarts);
        dist_total += run.dist_count;
        if (k == pieces.size() || satisfies_tolerance(pieces, run.labels, k, scl, tol_s)) {
            run.dist_count = dist_total;
            return run;
        }
    }
    throw Error("unreachable: k-search exhausted");
}

// ---------------------------------------------------------------- SAX / 1d-SAX

void SaxConfig::validate_sax() const {
    if (n_segments < 1) throw Error("n_segments must be >= 1");
    if (alphabet_size < 2) throw Error("alphabet size must be >= 2");
}

void SaxConfig::validate_onedsax() const {
    if (n_segments < 1) throw Error("n_segments must be >= 1");
    if (mean_alphabet < 2 || slope_alphabet < 2) throw Error("1d-SAX alphabet sizes must be >= 2");
}

std::vector<std::pair<std::size_t, std::size_t>> segment_bounds(std::size_t length, std::size_t n_segments) {
    check_segments(length, n_segments);
    const std::size_t base = length / n_segments;
    const std::size_t extra = length % n_segments;
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(n_segments);
    std::size_t at = 0;
    for (std::size_t s = 0; s < n_segments; ++s) {
        const std::size_t len = base + (s < extra ? 1 : 0);
        out.emplace_back(at, len);
        at += len;
    }
    return out;
}

SaxWord sax_transform(const TimeSeries& series, const SaxConfig& cfg) {
    cfg.validate_sax();
    check_segments(series.size(), cfg.n_segments);
    const Prepared prep = prepare(series, cfg.normalize);
    const auto breakpoints = gaussian_breakpoints(cfg.alphabet_size);

    SaxWord word;
    word.mean = prep.mean;
    word.std = prep.std;
    word.length = series.size();
    for (const auto& [start, len] : segment_bounds(series.size(), cfg.n_segments)) {
        double sum = 0.0;
        for (std::size_t i = start; i < start + len; ++i) sum += prep.values[i];
        word.symbols.push_back(quantize_cell(sum / static_cast<double>(len), breakpoints));
    }
    return word;
}

TimeSeries sax_inverse(std::span<const std::uint32_t> symbols, const SaxConfig& cfg, double mean_value,
                       double std_value, std::size_t length) {
    cfg.validate_sax();
    const auto bounds = segment_bounds(length, cfg.n_segments);
    if (symbols.size() != bounds.size()) throw Error("SAX word length does not match n_segments");
    const auto breakpoints = gaussian_breakpoints(cfg.alphabet_size);

    std::vector<double> out(length);
    for (std::size_t s = 0; s < bounds.size(); ++s) {
        const double v = cell_value(symbols[s], breakpoints) * std_value + mean_value;
        std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(bounds[s].first), bounds[s].second, v);
    }
    return TimeSeries(std::move(out));
}

std::vector<double> slope_breakpoints(std::size_t slope_alphabet, std::size_t segment_length) {
    auto bp = gaussian_breakpoints(slope_alphabet);
    const double sigma = std::sqrt(0.03 / static_cast<double>(std::max<std::size_t>(1, segment_length)));
    for (double& b : bp) b *= sigma;
    return bp;
}

OneDSaxWord onedsax_transform(const TimeSeries& series, const SaxConfig& cfg) {
    cfg.validate_onedsax();
    check_segments(series.size(), cfg.n_segments);
    const Prepared prep = prepare(series, cfg.normalize);
    const auto mean_bp = gaussian_breakpoints(cfg.mean_alphabet);

    OneDSaxWord word;
    word.mean = prep.mean;
    word.std = prep.std;
    word.length = series.size();
    for (const auto& [start, len] : segment_bounds(series.size(), cfg.n_segments)) {
        const double mid = 0.5 * static_cast<double>(len - 1);
        double sum = 0.0;
        for (std::size_t i = 0; i < len; ++i) sum += prep.values[start + i];
        const double seg_mean = sum / static_cast<double>(len);
        double sxy = 0.0;
        double sxx = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
            const double tc = static_cast<double>(i) - mid;
            sxy += tc * (prep.values[start + i] - seg_mean);
            sxx += tc * tc;
        }
        const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
        const auto slope_bp = slope_breakpoints(cfg.slope_alphabet, len);
        word.symbols.push_back({quantize_cell(seg_mean, mean_bp), quantize_cell(slope, slope_bp)});
    }
    return word;
}

TimeSeries onedsax_inverse(std::span<const OneDSaxSymbol> symbols, const SaxConfig& cfg, double mean_value,
                           double std_value, std::size_t length) {
    cfg.validate_onedsax();
    const auto bounds = segment_bounds(length, cfg.n_segments);
    if (symbols.size() != bounds.size()) throw Error("1d-SAX word length does not match n_segments");
    const auto mean_bp = gaussian_breakpoints(cfg.mean_alphabet);

    std::vector<double> out(length);
    for (std::size_t s = 0; s < bounds.size(); ++s) {
        const auto [start, len] = bounds[s];
        const double level = cell_value(symbols[s].mean_cell, mean_bp);
        const double slope = cell_value(symbols[s].slope_cell, slope_breakpoints(cfg.slope_alphabet, len));
        const double mid = 0.5 * static_cast<double>(len - 1);
        for (std::size_t i = 0; i < len; ++i) {
            out[start + i] = (level + slope * (static_cast<double>(i) - mid)) * std_value + mean_value;
        }
    }
    return TimeSeries(std::move(out));
}

std::pair<std::size_t, std::size_t> split_symbol_budget(std::size_t k) {
    if (k < 4) {
        throw Error("symbol budget must be >= 4");
    }
    auto mean_alphabet = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(k))));
    while (mean_alphabet * mean_alphabet < k) ++mean_alphabet;
    while (mean_alphabet > 1 && (mean_alphabet - 1) * (mean_alphabet - 1) >= k) --mean_alphabet;
    const std::size_t slope_alphabet = (k + mean_alphabet - 1) / mean_alphabet;
    return {mean_alphabet, slope_alphabet};
}

}  // namespace fabba
