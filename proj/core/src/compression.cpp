#include "fabba/compression.hpp"

#include <cmath>

namespace fabba {

namespace {

// Residual of the chord over [a, a + len] from running sums of w_u = t_{a+u} - t_a:
//   sum (chord - t)^2 = S1 - 2 s S2 + s^2 sum u^2,  s = w_len / len.
double running_residual(double s1, double s2, double w_end, std::int64_t len, double* scale) {
    const double l = static_cast<double>(len);
    const double slope = w_end / l;
    const double sum_u2 = l * (l + 1.0) * (2.0 * l + 1.0) / 6.0;
    const double quad = slope * slope * sum_u2;
    *scale = s1 + quad;
    return s1 - 2.0 * slope * s2 + quad;
}

}  // namespace

double chord_residual(std::span<const double> values, std::size_t first, std::size_t last) {
    if (last >= values.size() || first > last) {
        throw Error("chord range out of bounds");
    }
    if (first == last) return 0.0;
    const double t0 = values[first];
    const double len = static_cast<double>(last - first);
    const double d = values[last] - t0;
    double sum = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        const double line = t0 + d * (static_cast<double>(i - first) / len);
        const double e = line - values[i];
        sum += e * e;
    }
    return sum;
}

std::vector<Piece> compress(const TimeSeries& series, const CompressionConfig& cfg) {
    if (series.size() < 2) {
        throw Error("series too short");
    }
    if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) {
        throw Error("compression tolerance must be > 0");
    }
    if (cfg.max_len && *cfg.max_len < 1) {
        throw Error("max_len must be >= 1");
    }

    const auto t = series.values();
    const std::size_t last_index = t.size() - 1;
    const double tol2 = cfg.tol * cfg.tol;
    const std::int64_t cap = cfg.max_len ? *cfg.max_len : static_cast<std::int64_t>(last_index);

    std::vector<Piece> pieces;
    std::size_t start = 0;
    while (start < last_index) {
        const double base = t[start];
        const double w1 = t[start + 1] - base;
        double s1 = w1 * w1;
        double s2 = w1;
        std::int64_t accepted = 1;

        for (std::int64_t len = 2; len <= cap && start + static_cast<std::size_t>(len) <= last_index; ++len) {
            const double w = t[start + static_cast<std::size_t>(len)] - base;
            s1 += w * w;
            s2 += static_cast<double>(len) * w;

            double scale = 0.0;
            double residual = running_residual(s1, s2, w, len, &scale);
            const double bound = static_cast<double>(len - 1) * tol2;
            // The running form cancels; settle close calls with the direct sum.
            if (std::abs(residual - bound) <= 1e-9 * (scale + bound) + 1e-300) {
                residual = chord_residual(t, start, start + static_cast<std::size_t>(len));
            }
            if (residual <= bound) {
                accepted = len;
            } else {
                break;
            }
        }

        const std::size_t end = start + static_cast<std::size_t>(accepted);
        pieces.push_back({accepted, t[end] - base});
        start = end;
    }
    return pieces;
}

TimeSeries inverse_compress(double start_value, std::span<const Piece> pieces) {
    if (pieces.empty()) {
        throw Error("no pieces to reconstruct");
    }
    std::size_t total = 1;
    for (const Piece& p : pieces) {
        if (p.len < 1) {
            throw Error("invalid piece");
        }
        total += static_cast<std::size_t>(p.len);
    }

    std::vector<double> out;
    out.reserve(total);
    out.push_back(start_value);
    double knot = start_value;
    for (const Piece& p : pieces) {
        const double len = static_cast<double>(p.len);
        for (std::int64_t u = 1; u < p.len; ++u) {
            out.push_back(knot + p.inc * (static_cast<double>(u) / len));
        }
        knot += p.inc;
        out.push_back(knot);
    }
    return TimeSeries(std::move(out));
}

std::vector<std::size_t> knot_indices(std::span<const Piece> pieces) {
    std::vector<std::size_t> knots;
    knots.reserve(pieces.size() + 1);
    std::size_t at = 0;
    knots.push_back(at);
    for (const Piece& p : pieces) {
        if (p.len < 1) throw Error("invalid piece");
        at += static_cast<std::size_t>(p.len);
        knots.push_back(at);
    }
    return knots;
}

bool residual_check(const TimeSeries& series, std::span<const Piece> pieces, double tol) {
    const auto knots = knot_indices(pieces);
    if (knots.back() + 1 != series.size()) {
        throw Error("piece lengths do not match series length");
    }
    const auto t = series.values();
    const double tol2 = tol * tol;
    for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
        const double bound = static_cast<double>(knots[j + 1] - knots[j] - 1) * tol2;
        if (chord_residual(t, knots[j], knots[j + 1]) > bound) {
            return false;
        }
    }
    return true;
}

}  // namespace fabba
