#pragma once

// Reconstruction distances and evaluation scores.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

#include "fabba/core_model.hpp"

namespace fabba {

struct ReconstructionReport {
    double euclid = 0.0;
    double mse = 0.0;
    double dtw = 0.0;
    double euclid_diff = 0.0;
    double dtw_diff = 0.0;
    double tau_c = 1.0;
    double tau_d = 1.0;
    std::size_t k = 0;
    std::size_t n = 0;
    double runtime_ms = 0.0;
    std::uint64_t dist_count = 0;
};

[[nodiscard]] double euclid(const TimeSeries& a, const TimeSeries& b);
[[nodiscard]] double mse(const TimeSeries& a, const TimeSeries& b);

enum class DtwCost { squared, absolute };

/// Unconstrained DTW. With the default squared local cost the result is the
/// square root of the optimal accumulated cost; with absolute cost it is the
/// accumulated cost itself.
[[nodiscard]] double dtw(const TimeSeries& a, const TimeSeries& b, DtwCost cost = DtwCost::squared);

/// First differences; one value shorter than the input.
[[nodiscard]] TimeSeries difference(const TimeSeries& series);

/// Hubert-Arabie adjusted Rand index.
[[nodiscard]] double adjusted_rand(std::span<const std::size_t> labels_a, std::span<const std::size_t> labels_b);

/// (tau_c, tau_d) = (n / N, k / n).
[[nodiscard]] std::pair<double, double> rates(std::size_t n, std::size_t big_n, std::size_t k);

/// Euclid, MSE, DTW and their differenced variants of `recon` against `original`.
[[nodiscard]] ReconstructionReport score_reconstruction(const TimeSeries& original, const TimeSeries& recon);

}  // namespace fabba
