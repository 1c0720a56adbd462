#pragma once

// Adaptive polygonal-chain compression. Starting at index 0, each piece is
// extended one step at a time while the squared deviation of the covered
// values from the chord stays within (len - 1) * tol^2; the piece ends at
// the last index for which the bound held.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fabba/core_model.hpp"

namespace fabba {

struct CompressionConfig {
    double tol = 0.1;
    std::optional<std::int64_t> max_len;  // unbounded when empty
};

[[nodiscard]] std::vector<Piece> compress(const TimeSeries& series, const CompressionConfig& cfg);

/// Rebuilds the polygonal chain of length sum(len) + 1 starting at `start_value`.
[[nodiscard]] TimeSeries inverse_compress(double start_value, std::span<const Piece> pieces);

/// Sum over i in [first, last] of (chord(i) - t_i)^2, evaluated directly.
[[nodiscard]] double chord_residual(std::span<const double> values, std::size_t first, std::size_t last);

/// True iff every piece satisfies the compression bound against `series`.
[[nodiscard]] bool residual_check(const TimeSeries& series, std::span<const Piece> pieces, double tol);

/// Index of every knot i_0 = 0 < i_1 < ... < i_n.
[[nodiscard]] std::vector<std::size_t> knot_indices(std::span<const Piece> pieces);

}  // namespace fabba
