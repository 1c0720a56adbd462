#include "fabba/core_model.hpp"

#include <cmath>

namespace fabba {

TimeSeries::TimeSeries(std::vector<double> values, std::string name)
    : values_(std::move(values)), name_(std::move(name)) {
    if (values_.empty()) {
        throw Error("empty time series");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw Error("time series contains a non-finite value");
        }
    }
}

Codebook::Codebook(std::map<SymbolId, Center> entries) : entries_(std::move(entries)) {
    for (const auto& [id, c] : entries_) {
        if (!(c.len > 0.0) || !std::isfinite(c.len) || !std::isfinite(c.inc)) {
            throw Error("invalid codebook center for symbol " + std::to_string(id));
        }
    }
}

void Codebook::insert(SymbolId id, Center c) {
    if (!(c.len > 0.0) || !std::isfinite(c.len) || !std::isfinite(c.inc)) {
        throw Error("invalid codebook center for symbol " + std::to_string(id));
    }
    entries_[id] = c;
}

const Center& Codebook::at(SymbolId id) const {
    auto it = entries_.find(id);
    if (it == entries_.end()) {
        throw Error("unknown symbol " + std::to_string(id));
    }
    return it->second;
}

void SymbolicSeries::validate() const {
    if (codebook.size() == 0) {
        throw Error("empty codebook");
    }
    for (SymbolId s : symbols) {
        if (!codebook.contains(s)) {
            throw Error("unknown symbol " + std::to_string(s));
        }
    }
}

double mean(std::span<const double> values) {
    if (values.empty()) {
        throw Error("empty sequence");
    }
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double std_dev(std::span<const double> values) {
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) {
        const double d = v - m;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(values.size()));
}

ScaledPieces scale_pieces(std::span<const Piece> pieces, double scl) {
    if (pieces.empty()) {
        throw Error("no pieces to scale");
    }
    if (!(scl >= 0.0) || !std::isfinite(scl)) {
        throw Error("scl must be finite and >= 0");
    }
    std::vector<double> lens;
    std::vector<double> incs;
    lens.reserve(pieces.size());
    incs.reserve(pieces.size());
    for (const Piece& p : pieces) {
        lens.push_back(static_cast<double>(p.len));
        incs.push_back(p.inc);
    }

    ScaledPieces out;
    out.meta.sigma_len = std_dev(lens);
    out.meta.sigma_inc = std_dev(incs);
    if (out.meta.sigma_len == 0.0) out.meta.sigma_len = 1.0;
    if (out.meta.sigma_inc == 0.0) out.meta.sigma_inc = 1.0;
    out.meta.scl = scl;

    out.points.reserve(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        out.points.push_back({scl * lens[i] / out.meta.sigma_len, incs[i] / out.meta.sigma_inc, i});
    }
    return out;
}

Center unscale(Point2 p, const ScalingMeta& meta) {
    if (!(meta.scl > 0.0)) {
        throw Error("cannot recover lengths when scl = 0");
    }
    return {p.x * meta.sigma_len / meta.scl, p.y * meta.sigma_inc};
}

std::string symbol_name(SymbolId id) {
    if (id < 26) {
        return std::string(1, static_cast<char>('a' + id));
    }
    return "s" + std::to_string(id);
}

Normalized znormalize(const TimeSeries& series) {
    Normalized out;
    out.mean = mean(series.values());
    out.std = std_dev(series.values());
    if (out.std == 0.0) out.std = 1.0;
    std::vector<double> v;
    v.reserve(series.size());
    for (double x : series.values()) v.push_back((x - out.mean) / out.std);
    out.series = TimeSeries(std::move(v), series.name());
    return out;
}

TimeSeries denormalize(const TimeSeries& series, double mean_value, double std_value) {
    std::vector<double> v;
    v.reserve(series.size());
    for (double x : series.values()) v.push_back(x * std_value + mean_value);
    return TimeSeries(std::move(v), series.name());
}

}  // namespace fabba
