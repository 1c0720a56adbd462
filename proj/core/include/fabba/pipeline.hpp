#pragma once

// End-to-end fABBA: compression -> scaling -> aggregation -> symbols, and the
// inverse chain symbols -> centers -> integer lengths -> polygonal chain.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fabba/aggregation.hpp"
#include "fabba/compression.hpp"
#include "fabba/core_model.hpp"

namespace fabba {

struct FabbaConfig {
    double tol = 0.1;
    double alpha = 0.5;
    double scl = 1.0;
    SortKind sorting = SortKind::norm_2;
    bool normalize = false;

    void validate() const;
};

struct FabbaModel {
    SymbolicSeries symbolic;
    std::size_t pieces_count = 0;
    std::uint64_t dist_count = 0;
    std::int64_t series_len = 0;  // N, i.e. the series has N + 1 values

    friend bool operator==(const FabbaModel&, const FabbaModel&) = default;
};

struct Digitization {
    SymbolicSeries symbolic;
    std::uint64_t dist_count = 0;
};

/// Groups pieces with the aggregation scan and builds the symbol string and
/// an unscaled codebook. `scaling` comes back with sigma_len, sigma_inc and scl set.
[[nodiscard]] Digitization digitize(std::span<const Piece> pieces, double alpha, double scl, SortKind sorting);

/// Symbol string + codebook from an arbitrary labelling of `pieces` into groups 0..k-1.
/// Codebook entries are the unscaled (len, inc) means of each group.
[[nodiscard]] SymbolicSeries symbolize(std::span<const Piece> pieces, std::span<const std::size_t> labels,
                                       std::size_t k, const ScalingMeta& scaling);

[[nodiscard]] FabbaModel fabba_transform(const TimeSeries& series, const FabbaConfig& cfg);

[[nodiscard]] std::vector<Center> inverse_digitize(const SymbolicSeries& symbolic);

/// Rolling-carry rounding of real lengths to integers >= 1; the last length
/// absorbs whatever is needed for the total to equal `target_total`.
[[nodiscard]] std::vector<Piece> quantize_lengths(std::span<const Center> tuples, std::int64_t target_total);

[[nodiscard]] TimeSeries fabba_inverse(const FabbaModel& model);

/// Symbol names with the most frequent group shown as 'a' (ties by formation order).
[[nodiscard]] std::vector<std::string> display_symbols(const SymbolicSeries& symbolic);
/// Display names concatenated; separated by spaces once any name is longer than one character.
[[nodiscard]] std::string display_string(const SymbolicSeries& symbolic);

// Model JSON: {"symbols": [...], "codebook": {"id": [len, inc]}, "scaling": {...}, "series_len": N}
[[nodiscard]] std::string serialize_model(const FabbaModel& model);
[[nodiscard]] FabbaModel parse_model(std::string_view json_text);

}  // namespace fabba
