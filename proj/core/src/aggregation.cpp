#include "fabba/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fabba {

namespace {

constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

double norm_key(const ScaledPoint& p, SortKind kind) {
    if (kind == SortKind::norm_1) return std::abs(p.x) + std::abs(p.y);
    return std::sqrt(p.x * p.x + p.y * p.y);
}

// Smallest unassigned sorted position >= i; `size` when none remain.
class FreeList {
public:
    explicit FreeList(std::size_t n) : next_(n + 1) { std::iota(next_.begin(), next_.end(), 0); }

    std::size_t find(std::size_t i) {
        std::size_t root = i;
        while (next_[root] != root) root = next_[root];
        while (next_[i] != root) {
            const std::size_t up = next_[i];
            next_[i] = root;
            i = up;
        }
        return root;
    }

    void take(std::size_t i) { next_[i] = i + 1; }

private:
    std::vector<std::size_t> next_;
};

void check_labels(std::span<const ScaledPoint> points, std::span<const std::size_t> labels,
                  std::span<const Point2> centers) {
    if (labels.size() != points.size()) {
        throw Error("labels and points differ in size");
    }
    for (const ScaledPoint& p : points) {
        if (p.origin_index >= labels.size()) throw Error("origin_index out of range");
        if (labels[p.origin_index] >= centers.size()) throw Error("label out of range");
    }
}

}  // namespace

std::string_view to_string(SortKind kind) {
    switch (kind) {
        case SortKind::lexicographic_binned: return "lexi";
        case SortKind::norm_1: return "1-norm";
        case SortKind::norm_2: return "2-norm";
    }
    return "?";
}

SortKind parse_sort_kind(std::string_view text) {
    if (text == "lexi" || text == "lexicographic" || text == "lexicographic_binned") {
        return SortKind::lexicographic_binned;
    }
    if (text == "1-norm" || text == "norm_1" || text == "norm1") return SortKind::norm_1;
    if (text == "2-norm" || text == "norm_2" || text == "norm2") return SortKind::norm_2;
    throw Error("unknown sorting '" + std::string(text) + "'");
}

std::vector<std::size_t> sort_points(std::span<const ScaledPoint> points, SortKind kind) {
    if (points.empty()) {
        throw Error("no points to sort");
    }
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);

    if (kind == SortKind::lexicographic_binned) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const ScaledPoint& pa = points[a];
            const ScaledPoint& pb = points[b];
            if (pa.x != pb.x) return pa.x < pb.x;
            if (pa.y != pb.y) return pa.y < pb.y;
            return pa.origin_index < pb.origin_index;
        });
        return order;
    }

    std::vector<double> key(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) key[i] = norm_key(points[i], kind);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (key[a] != key[b]) return key[a] < key[b];
        return points[a].origin_index < points[b].origin_index;
    });
    return order;
}

AggregationResult aggregate(std::span<const ScaledPoint> points, double alpha, SortKind kind) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw Error("alpha must be > 0");
    }
    if (points.empty()) {
        throw Error("no points to aggregate");
    }
    const std::size_t n = points.size();
    {
        std::vector<bool> seen(n, false);
        for (const ScaledPoint& p : points) {
            if (p.origin_index >= n || seen[p.origin_index]) {
                throw Error("origin_index values must be a permutation of 0..n-1");
            }
            seen[p.origin_index] = true;
        }
    }

    AggregationResult result;
    result.alpha = alpha;
    result.sorted_order = sort_points(points, kind);
    result.labels.assign(n, kUnassigned);

    // Sorted copies keep the scan cache-friendly.
    std::vector<double> xs(n), ys(n), keys(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        const ScaledPoint& p = points[result.sorted_order[pos]];
        xs[pos] = p.x;
        ys[pos] = p.y;
        keys[pos] = kind == SortKind::lexicographic_binned ? p.x : norm_key(p, kind);
    }

    std::vector<std::size_t> bin_end;
    if (kind == SortKind::lexicographic_binned) {
        bin_end.resize(n);
        std::size_t end = n;
        for (std::size_t pos = n; pos-- > 0;) {
            if (pos + 1 < n && xs[pos + 1] != xs[pos]) end = pos + 1;
            bin_end[pos] = end;
        }
    }

    const double stop_gap = kind == SortKind::norm_1 ? std::sqrt(2.0) * alpha : alpha;
    std::vector<std::size_t> sorted_labels(n, kUnassigned);
    FreeList free(n);

    for (std::size_t sp = free.find(0); sp < n; sp = free.find(sp)) {
        const std::size_t group = result.starting_points.size();
        result.starting_points.push_back(sp);
        sorted_labels[sp] = group;
        free.take(sp);

        for (std::size_t j = free.find(sp + 1); j < n;) {
            if (kind == SortKind::lexicographic_binned) {
                if (xs[j] - xs[sp] > alpha) break;
                if (ys[j] - ys[sp] > alpha) {
                    j = free.find(bin_end[j]);
                    continue;
                }
            } else {
                // Slack absorbs rounding in the two norms so the stop stays sound.
                const double slack = 1e-12 * (keys[j] + keys[sp] + stop_gap);
                if (keys[j] - keys[sp] > stop_gap + slack) break;
            }

            const double dx = xs[j] - xs[sp];
            const double dy = ys[j] - ys[sp];
            ++result.dist_count;
            if (std::sqrt(dx * dx + dy * dy) <= alpha) {
                sorted_labels[j] = group;
                free.take(j);
            }
            j = free.find(j + 1);
        }
    }

    const std::size_t k = result.starting_points.size();
    result.group_sizes.assign(k, 0);
    std::vector<Point2> anchor(k);
    std::vector<Point2> offset(k);
    for (std::size_t g = 0; g < k; ++g) {
        anchor[g] = {xs[result.starting_points[g]], ys[result.starting_points[g]]};
    }
    // Mean as anchor + mean offset, so groups of identical points reproduce them exactly.
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t g = sorted_labels[pos];
        ++result.group_sizes[g];
        offset[g].x += xs[pos] - anchor[g].x;
        offset[g].y += ys[pos] - anchor[g].y;
        result.labels[points[result.sorted_order[pos]].origin_index] = g;
    }
    result.centers.resize(k);
    for (std::size_t g = 0; g < k; ++g) {
        const double size = static_cast<double>(result.group_sizes[g]);
        result.centers[g] = {anchor[g].x + offset[g].x / size, anchor[g].y + offset[g].y / size};
    }
    return result;
}

std::vector<Point2> starting_point_coords(std::span<const ScaledPoint> points, const AggregationResult& result) {
    std::vector<Point2> out;
    out.reserve(result.starting_points.size());
    for (std::size_t pos : result.starting_points) {
        out.push_back(points[result.sorted_order.at(pos)].xy());
    }
    return out;
}

double wcss_from(std::span<const ScaledPoint> points, std::span<const std::size_t> labels,
                 std::span<const Point2> centers) {
    check_labels(points, labels, centers);
    double total = 0.0;
    for (const ScaledPoint& p : points) {
        const Point2& c = centers[labels[p.origin_index]];
        const double dx = p.x - c.x;
        const double dy = p.y - c.y;
        total += dx * dx + dy * dy;
    }
    return total;
}

std::vector<double> group_variances(std::span<const ScaledPoint> points, std::span<const std::size_t> labels,
                                    std::span<const Point2> centers) {
    check_labels(points, labels, centers);
    std::vector<double> sum(centers.size(), 0.0);
    std::vector<std::size_t> count(centers.size(), 0);
    for (const ScaledPoint& p : points) {
        const std::size_t g = labels[p.origin_index];
        const double dx = p.x - centers[g].x;
        const double dy = p.y - centers[g].y;
        sum[g] += dx * dx + dy * dy;
        ++count[g];
    }
    for (std::size_t g = 0; g < sum.size(); ++g) {
        if (count[g] > 0) sum[g] /= static_cast<double>(count[g]);
    }
    return sum;
}

}  // namespace fabba
