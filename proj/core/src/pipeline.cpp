#include "fabba/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fabba {

void FabbaConfig::validate() const {
    if (!(tol > 0.0) || !std::isfinite(tol)) throw Error("tol must be > 0");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error("alpha must be > 0");
    if (!(scl >= 0.0) || !std::isfinite(scl)) throw Error("scl must be >= 0");
}

SymbolicSeries symbolize(std::span<const Piece> pieces, std::span<const std::size_t> labels, std::size_t k,
                         const ScalingMeta& scaling) {
    if (labels.size() != pieces.size()) {
        throw Error("labels and pieces differ in size");
    }
    if (k == 0) {
        throw Error("need at least one group");
    }

    // Mean as first member + mean offset: exact when all members coincide.
    std::vector<std::size_t> count(k, 0);
    std::vector<std::size_t> first(k, pieces.size());
    std::vector<Center> offset(k, Center{0.0, 0.0});
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const std::size_t g = labels[i];
        if (g >= k) throw Error("label out of range");
        if (count[g]++ == 0) first[g] = i;
        const Piece& anchor = pieces[first[g]];
        offset[g].len += static_cast<double>(pieces[i].len - anchor.len);
        offset[g].inc += pieces[i].inc - anchor.inc;
    }

    SymbolicSeries out;
    out.scaling = scaling;
    out.symbols.reserve(labels.size());
    for (std::size_t label : labels) out.symbols.push_back(static_cast<SymbolId>(label));
    for (std::size_t g = 0; g < k; ++g) {
        if (count[g] == 0) continue;
        const Piece& anchor = pieces[first[g]];
        const double size = static_cast<double>(count[g]);
        out.codebook.insert(static_cast<SymbolId>(g),
                            {static_cast<double>(anchor.len) + offset[g].len / size, anchor.inc + offset[g].inc / size});
    }
    return out;
}

Digitization digitize(std::span<const Piece> pieces, double alpha, double scl, SortKind sorting) {
    ScaledPieces scaled = scale_pieces(pieces, scl);
    AggregationResult groups = aggregate(scaled.points, alpha, sorting);
    Digitization out;
    out.dist_count = groups.dist_count;
    out.symbolic = symbolize(pieces, groups.labels, groups.groups(), scaled.meta);
    return out;
}

FabbaModel fabba_transform(const TimeSeries& series, const FabbaConfig& cfg) {
    cfg.validate();
    if (series.size() < 2) {
        throw Error("series too short");
    }

    TimeSeries working = series;
    double mean_value = 0.0;
    double std_value = 1.0;
    if (cfg.normalize) {
        Normalized z = znormalize(series);
        working = std::move(z.series);
        mean_value = z.mean;
        std_value = z.std;
    }

    const std::vector<Piece> pieces = compress(working, CompressionConfig{cfg.tol, std::nullopt});
    Digitization digits = digitize(pieces, cfg.alpha, cfg.scl, cfg.sorting);

    FabbaModel model;
    model.symbolic = std::move(digits.symbolic);
    model.symbolic.scaling.start_value = working.front();
    model.symbolic.scaling.normalize = cfg.normalize;
    model.symbolic.scaling.mean = mean_value;
    model.symbolic.scaling.std = std_value;
    model.pieces_count = pieces.size();
    model.dist_count = digits.dist_count;
    model.series_len = static_cast<std::int64_t>(working.size()) - 1;
    return model;
}

std::vector<Center> inverse_digitize(const SymbolicSeries& symbolic) {
    std::vector<Center> out;
    out.reserve(symbolic.symbols.size());
    for (SymbolId s : symbolic.symbols) out.push_back(symbolic.codebook.at(s));
    return out;
}

std::vector<Piece> quantize_lengths(std::span<const Center> tuples, std::int64_t target_total) {
    if (tuples.empty()) {
        throw Error("no tuples to quantize");
    }
    if (static_cast<std::int64_t>(tuples.size()) > target_total) {
        throw Error("cannot quantize");
    }

    std::vector<Piece> out;
    out.reserve(tuples.size());
    double carry = 0.0;
    std::int64_t total = 0;
    for (const Center& c : tuples) {
        if (!(c.len > 0.0)) throw Error("tuple length must be > 0");
        const auto q = std::max<std::int64_t>(1, std::llround(c.len + carry));
        carry += c.len - static_cast<double>(q);
        total += q;
        out.push_back({q, c.inc});
    }

    // The last piece takes the difference; if the clamp at 1 bites, the
    // remainder moves on to the preceding pieces.
    std::int64_t diff = target_total - total;
    for (std::size_t i = out.size(); i-- > 0 && diff != 0;) {
        const std::int64_t adjusted = std::max<std::int64_t>(1, out[i].len + diff);
        diff -= adjusted - out[i].len;
        out[i].len = adjusted;
    }
    return out;
}

TimeSeries fabba_inverse(const FabbaModel& model) {
    model.symbolic.validate();
    const std::vector<Center> centers = inverse_digitize(model.symbolic);
    const std::vector<Piece> pieces = quantize_lengths(centers, model.series_len);
    TimeSeries chain = inverse_compress(model.symbolic.scaling.start_value, pieces);
    if (model.symbolic.scaling.normalize) {
        return denormalize(chain, model.symbolic.scaling.mean, model.symbolic.scaling.std);
    }
    return chain;
}

std::vector<std::string> display_symbols(const SymbolicSeries& symbolic) {
    std::map<SymbolId, std::size_t> freq;
    for (const auto& [id, c] : symbolic.codebook.entries()) freq[id] = 0;
    for (SymbolId s : symbolic.symbols) ++freq[s];

    std::vector<std::pair<SymbolId, std::size_t>> ranked(freq.begin(), freq.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::map<SymbolId, SymbolId> rank;
    for (std::size_t r = 0; r < ranked.size(); ++r) rank[ranked[r].first] = static_cast<SymbolId>(r);

    std::vector<std::string> out;
    out.reserve(symbolic.symbols.size());
    for (SymbolId s : symbolic.symbols) out.push_back(symbol_name(rank.at(s)));
    return out;
}

std::string display_string(const SymbolicSeries& symbolic) {
    const auto names = display_symbols(symbolic);
    const bool single = std::all_of(names.begin(), names.end(), [](const std::string& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!single && i > 0) out.push_back(' ');
        out += names[i];
    }
    return out;
}

}  // namespace fabba
