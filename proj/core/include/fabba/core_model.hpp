#pragma once

// Shared domain types for the fABBA symbolic representation: series,
// polygonal-chain pieces, scaled 2-d points and the symbol codebook.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fabba {

/// Raised for precondition violations and malformed data anywhere in the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Univariate series t_0..t_N. Values are finite and there is at least one.
class TimeSeries {
public:
    TimeSeries() = default;
    explicit TimeSeries(std::vector<double> values, std::string name = {});

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<double>& data() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] double front() const { return values_.front(); }

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::vector<double> values_;
    std::string name_;
};

/// One segment of the polygonal chain: `len` time steps, value change `inc`.
struct Piece {
    std::int64_t len = 1;
    double inc = 0.0;

    friend bool operator==(const Piece&, const Piece&) = default;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

/// A piece mapped into the normalized (length, increment) plane.
struct ScaledPoint {
    double x = 0.0;
    double y = 0.0;
    std::size_t origin_index = 0;

    [[nodiscard]] Point2 xy() const noexcept { return {x, y}; }
    friend bool operator==(const ScaledPoint&, const ScaledPoint&) = default;
};

/// Everything needed to map scaled coordinates and normalized values back.
/// sigma_len / sigma_inc / std hold the divisors actually used (zero guarded).
struct ScalingMeta {
    double sigma_len = 1.0;
    double sigma_inc = 1.0;
    double scl = 1.0;
    double start_value = 0.0;
    bool normalize = false;
    double mean = 0.0;
    double std = 1.0;

    friend bool operator==(const ScalingMeta&, const ScalingMeta&) = default;
};

using SymbolId = std::uint32_t;

/// Unscaled group mean (mean len, mean inc).
struct Center {
    double len = 1.0;
    double inc = 0.0;

    friend bool operator==(const Center&, const Center&) = default;
};

class Codebook {
public:
    Codebook() = default;
    explicit Codebook(std::map<SymbolId, Center> entries);

    void insert(SymbolId id, Center c);
    [[nodiscard]] const Center& at(SymbolId id) const;
    [[nodiscard]] bool contains(SymbolId id) const { return entries_.contains(id); }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] const std::map<SymbolId, Center>& entries() const noexcept { return entries_; }

    friend bool operator==(const Codebook&, const Codebook&) = default;

private:
    std::map<SymbolId, Center> entries_;
};

struct SymbolicSeries {
    std::vector<SymbolId> symbols;
    Codebook codebook;
    ScalingMeta scaling;

    /// Throws unless every symbol has a codebook entry and the codebook is non-empty.
    void validate() const;

    friend bool operator==(const SymbolicSeries&, const SymbolicSeries&) = default;
};

/// Population standard deviation (divides by the count).
[[nodiscard]] double std_dev(std::span<const double> values);

[[nodiscard]] double mean(std::span<const double> values);

struct ScaledPieces {
    std::vector<ScaledPoint> points;
    ScalingMeta meta;
};

/// Maps piece i to (scl * len / sigma_len, inc / sigma_inc). A zero sigma is replaced by 1.
[[nodiscard]] ScaledPieces scale_pieces(std::span<const Piece> pieces, double scl);

/// Inverse of the scaling for a point in scaled coordinates. Requires meta.scl > 0.
[[nodiscard]] Center unscale(Point2 p, const ScalingMeta& meta);

/// Display name of a symbol: 0..25 -> "a".."z", larger ids -> "s<id>".
[[nodiscard]] std::string symbol_name(SymbolId id);

/// Z-normalized copy of a series with the (mean, divisor) used. A zero std uses divisor 1.
struct Normalized {
    TimeSeries series;
    double mean = 0.0;
    double std = 1.0;
};
[[nodiscard]] Normalized znormalize(const TimeSeries& series);
[[nodiscard]] TimeSeries denormalize(const TimeSeries& series, double mean, double std);

}  // namespace fabba
