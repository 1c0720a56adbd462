#pragma once

// Comparison methods: k-means++ ABBA digitization, SAX and 1d-SAX.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fabba/core_model.hpp"

namespace fabba {

// ---------------------------------------------------------------- k-means++

struct KMeansResult {
    std::vector<Point2> centers;
    std::vector<std::size_t> labels;
    double inertia = 0.0;
    std::size_t iterations = 0;
    std::vector<double> inertia_history;  // inertia after each assignment step
    std::uint64_t dist_count = 0;
};

/// k-means++ seeding followed by Lloyd iterations until the assignment stops
/// changing or `max_iter` is reached. Deterministic for a given seed.
[[nodiscard]] KMeansResult kmeans_pp(std::span<const Point2> points, std::size_t k, std::uint64_t seed,
                                     std::size_t max_iter = 300);

/// Best of `restarts` runs (seeds seed, seed+1, ...) by inertia.
[[nodiscard]] KMeansResult kmeans_pp_restarts(std::span<const Point2> points, std::size_t k, std::uint64_t seed,
                                              std::size_t restarts);

// ---------------------------------------------------------------- ABBA

struct AbbaDigitization {
    std::vector<std::size_t> labels;
    std::vector<Point2> centers;  // scaled coordinates
    std::size_t k = 0;
    ScalingMeta meta;
    std::uint64_t dist_count = 0;
};

/// max(scl * Var_len, Var_inc) over the unscaled tuples of each cluster.
[[nodiscard]] double max_cluster_variance(std::span<const Piece> pieces, std::span<const std::size_t> labels,
                                          std::size_t k, double scl);

/// True when max(scl * Var_len, Var_inc) <= tol_s^2.
[[nodiscard]] bool satisfies_tolerance(std::span<const Piece> pieces, std::span<const std::size_t> labels,
                                       std::size_t k, double scl, double tol_s);

/// Smallest k (scanned upward from 1) whose k-means++ clustering of the
/// scaled pieces satisfies the variance tolerance.
[[nodiscard]] AbbaDigitization abba_digitize(std::span<const Piece> pieces, double tol_s, double scl,
                                             std::uint64_t seed, std::size_t restarts = 1);

/// k-means++ digitization at a fixed k.
[[nodiscard]] AbbaDigitization abba_digitize_fixed_k(std::span<const Piece> pieces, std::size_t k, double scl,
                                                     std::uint64_t seed, std::size_t restarts = 1);

// ---------------------------------------------------------------- normal quantiles

/// Inverse standard normal CDF, accurate to ~1e-12 on (0, 1).
[[nodiscard]] double normal_quantile(double p);

/// The a - 1 equiprobable cut points of N(0, 1). Exactly antisymmetric.
[[nodiscard]] std::vector<double> gaussian_breakpoints(std::size_t alphabet_size);

/// Cell index of `value`: the number of breakpoints <= value.
[[nodiscard]] std::uint32_t quantize_cell(double value, std::span<const double> breakpoints);

/// Representative value of a cell: midpoint for interior cells, outer cells
/// extend the neighbouring half-gap; for two cells, +-sqrt(2/pi).
[[nodiscard]] double cell_value(std::uint32_t cell, std::span<const double> breakpoints);

// ---------------------------------------------------------------- SAX / 1d-SAX

struct SaxConfig {
    std::size_t n_segments = 1;
    std::size_t alphabet_size = 4;   // SAX
    std::size_t mean_alphabet = 4;   // 1d-SAX
    std::size_t slope_alphabet = 4;  // 1d-SAX
    bool normalize = true;

    void validate_sax() const;
    void validate_onedsax() const;
};

/// Start offset and length of each of `n_segments` near-equal segments;
/// the first (length % n_segments) segments are one longer.
[[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> segment_bounds(std::size_t length,
                                                                              std::size_t n_segments);

struct SaxWord {
    std::vector<std::uint32_t> symbols;
    double mean = 0.0;
    double std = 1.0;  // divisor used for normalization
    std::size_t length = 0;
};

[[nodiscard]] SaxWord sax_transform(const TimeSeries& series, const SaxConfig& cfg);
[[nodiscard]] TimeSeries sax_inverse(std::span<const std::uint32_t> symbols, const SaxConfig& cfg, double mean,
                                     double std, std::size_t length);

struct OneDSaxSymbol {
    std::uint32_t mean_cell = 0;
    std::uint32_t slope_cell = 0;

    friend bool operator==(const OneDSaxSymbol&, const OneDSaxSymbol&) = default;
};

struct OneDSaxWord {
    std::vector<OneDSaxSymbol> symbols;
    double mean = 0.0;
    double std = 1.0;
    std::size_t length = 0;
};

/// Slope breakpoints for a segment of `segment_length` points: the Gaussian
/// cut points scaled to standard deviation sqrt(0.03 / segment_length).
[[nodiscard]] std::vector<double> slope_breakpoints(std::size_t slope_alphabet, std::size_t segment_length);

[[nodiscard]] OneDSaxWord onedsax_transform(const TimeSeries& series, const SaxConfig& cfg);
[[nodiscard]] TimeSeries onedsax_inverse(std::span<const OneDSaxSymbol> symbols, const SaxConfig& cfg, double mean,
                                         double std, std::size_t length);

/// Splits a symbol budget k >= 4 into (mean alphabet, slope alphabet) =
/// (ceil(sqrt(k)), ceil(k / ceil(sqrt(k)))).
[[nodiscard]] std::pair<std::size_t, std::size_t> split_symbol_budget(std::size_t k);

}  // namespace fabba
