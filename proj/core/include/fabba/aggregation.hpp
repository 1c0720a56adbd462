#pragma once

// Greedy sorting-based aggregation of 2-d points.
//
// Points are sorted, then scanned in order. The first unassigned point is the
// starting point of a new group and every later unassigned point within
// Euclidean distance alpha of it joins the group. The sort key bounds the
// distance from below, so the scan for a group stops as soon as no remaining
// point can be within alpha:
//
//   norm_2                 ||p||_2 - ||sp||_2 > alpha
//   norm_1                 ||p||_1 - ||sp||_1 > sqrt(2) * alpha
//   lexicographic_binned   p.x - sp.x > alpha; inside a bin (equal x) the rest
//                          of the bin is skipped once p.y - sp.y > alpha
//
// Group means are computed once, after every point has been assigned.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fabba/core_model.hpp"

namespace fabba {

enum class SortKind { lexicographic_binned, norm_1, norm_2 };

[[nodiscard]] std::string_view to_string(SortKind kind);
/// Accepts "lexi", "lexicographic", "1-norm", "norm_1", "2-norm", "norm_2".
[[nodiscard]] SortKind parse_sort_kind(std::string_view text);

struct AggregationResult {
    std::vector<std::size_t> labels;           // indexed by origin_index
    std::vector<std::size_t> sorted_order;     // sorted position -> index into the input span
    std::vector<std::size_t> starting_points;  // sorted positions, strictly increasing
    std::vector<Point2> centers;               // group means, scaled coordinates
    std::vector<std::size_t> group_sizes;
    std::uint64_t dist_count = 0;
    double alpha = 0.0;

    [[nodiscard]] std::size_t groups() const noexcept { return centers.size(); }
};

/// Sort permutation over the input span. Ties fall back to origin_index.
[[nodiscard]] std::vector<std::size_t> sort_points(std::span<const ScaledPoint> points, SortKind kind);

[[nodiscard]] AggregationResult aggregate(std::span<const ScaledPoint> points, double alpha, SortKind kind);

/// Coordinates of each group's starting point.
[[nodiscard]] std::vector<Point2> starting_point_coords(std::span<const ScaledPoint> points,
                                                        const AggregationResult& result);

/// Sum over points of the squared distance to the center of its group.
/// `labels` is indexed by origin_index.
[[nodiscard]] double wcss_from(std::span<const ScaledPoint> points, std::span<const std::size_t> labels,
                               std::span<const Point2> centers);

/// Var_i = mean squared distance of group i's points to centers[i].
[[nodiscard]] std::vector<double> group_variances(std::span<const ScaledPoint> points,
                                                  std::span<const std::size_t> labels,
                                                  std::span<const Point2> centers);

}  // namespace fabba
