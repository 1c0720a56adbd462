#include <charconv>
#include <string>

#include <json.hpp>

#include "fabba/pipeline.hpp"

namespace fabba {

namespace {

using Json = nlohmann::ordered_json;

double number_field(const Json& obj, const char* key) {
    if (!obj.contains(key) || !obj.at(key).is_number()) {
        throw Error(std::string("model JSON: missing or non-numeric field '") + key + "'");
    }
    return obj.at(key).get<double>();
}

SymbolId parse_symbol_key(const std::string& key) {
    SymbolId id = 0;
    const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), id);
    if (ec != std::errc() || ptr != key.data() + key.size() || key.empty()) {
        throw Error("model JSON: invalid codebook key '" + key + "'");
    }
    return id;
}

}  // namespace

std::string serialize_model(const FabbaModel& model) {
    Json doc = Json::object();

    Json symbols = Json::array();
    for (SymbolId s : model.symbolic.symbols) symbols.push_back(s);
    doc["symbols"] = std::move(symbols);

    Json codebook = Json::object();
    for (const auto& [id, c] : model.symbolic.codebook.entries()) {
        codebook[std::to_string(id)] = Json::array({c.len, c.inc});
    }
    doc["codebook"] = std::move(codebook);

    const ScalingMeta& m = model.symbolic.scaling;
    doc["scaling"] = Json{{"sigma_len", m.sigma_len}, {"sigma_inc", m.sigma_inc}, {"scl", m.scl},
                          {"start_value", m.start_value}, {"normalize", m.normalize}, {"mean", m.mean},
                          {"std", m.std}};
    doc["series_len"] = model.series_len;
    return doc.dump(2) + "\n";
}

FabbaModel parse_model(std::string_view json_text) {
    Json doc;
    try {
        doc = Json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(std::string("model JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error("model JSON: top level must be an object");
    for (const char* key : {"symbols", "codebook", "scaling", "series_len"}) {
        if (!doc.contains(key)) throw Error(std::string("model JSON: missing field '") + key + "'");
    }

    FabbaModel model;
    const Json& symbols = doc.at("symbols");
    if (!symbols.is_array()) throw Error("model JSON: 'symbols' must be an array");
    for (const Json& s : symbols) {
        if (!s.is_number_unsigned()) throw Error("model JSON: symbols must be non-negative integers");
        model.symbolic.symbols.push_back(s.get<SymbolId>());
    }

    const Json& codebook = doc.at("codebook");
    if (!codebook.is_object()) throw Error("model JSON: 'codebook' must be an object");
    for (const auto& [key, value] : codebook.items()) {
        if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
            throw Error("model JSON: codebook entries must be [len, inc]");
        }
        model.symbolic.codebook.insert(parse_symbol_key(key), {value[0].get<double>(), value[1].get<double>()});
    }

    const Json& scaling = doc.at("scaling");
    if (!scaling.is_object()) throw Error("model JSON: 'scaling' must be an object");
    ScalingMeta& m = model.symbolic.scaling;
    m.sigma_len = number_field(scaling, "sigma_len");
    m.sigma_inc = number_field(scaling, "sigma_inc");
    m.scl = number_field(scaling, "scl");
    m.start_value = number_field(scaling, "start_value");
    m.mean = number_field(scaling, "mean");
    m.std = number_field(scaling, "std");
    if (!scaling.contains("normalize") || !scaling.at("normalize").is_boolean()) {
        throw Error("model JSON: missing or non-boolean field 'normalize'");
    }
    m.normalize = scaling.at("normalize").get<bool>();

    const Json& series_len = doc.at("series_len");
    if (!series_len.is_number_integer()) throw Error("model JSON: 'series_len' must be an integer");
    model.series_len = series_len.get<std::int64_t>();

    model.pieces_count = model.symbolic.symbols.size();
    model.symbolic.validate();
    if (model.series_len < static_cast<std::int64_t>(model.pieces_count) || model.pieces_count == 0) {
        throw Error("model JSON: series_len must be >= number of symbols >= 1");
    }
    return model;
}

}  // namespace fabba
