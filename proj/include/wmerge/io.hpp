#pragma once

// JSON instance files and result documents.

#include "wmerge/distance.hpp"
#include "wmerge/error.hpp"
#include "wmerge/formula.hpp"
#include "wmerge/merge.hpp"
#include "wmerge/weights.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace wmerge {

using Json = nlohmann::ordered_json;

/// Contents of an instance file. With `sources`, `instance.profile` is the
/// flattened list of their formulae.
struct InstanceFile {
    Instance instance;
    std::optional<SourceProfile> sources;
    std::optional<DistanceKind> distance;
    std::optional<WeightScheme> scheme;
};

inline Json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open '" + path + "'");
    try {
        return Json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what(), e.byte);
    }
}

namespace detail {

inline const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::string require_string(const Json& j, const std::string& what) {
    if (!j.is_string()) throw ValidationError(what + " must be a string");
    return j.get<std::string>();
}

inline std::int64_t require_int(const Json& j, const std::string& what) {
    if (!j.is_number_integer()) throw ValidationError(what + " must be an integer");
    return j.get<std::int64_t>();
}

inline std::vector<Formula> formula_list(const Json& j, const Universe& u, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + " must be a list of formulae");
    std::vector<Formula> out;
    for (const auto& x : j) out.push_back(parse_formula(require_string(x, what + " entry"), u));
    return out;
}

}  // namespace detail

/// `"hamming"`, `"drastic"`, or `{"table": [[count, value], ...], "default": v}`
/// with the counts 0..k-1 each listed once.
inline DistanceKind distance_from_json(const Json& j) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "hamming") return DistanceKind::hamming();
        if (s == "drastic") return DistanceKind::drastic();
        throw ValidationError("unknown distance '" + s + "'");
    }
    const Json& rows = detail::require(j, "table");
    if (!rows.is_array() || rows.empty()) throw ValidationError("distance table must be a non-empty list");
    std::map<std::int64_t, std::int64_t> entries;
    for (const auto& r : rows) {
        if (!r.is_array() || r.size() != 2) throw ValidationError("distance table rows must be [count, value] pairs");
        auto k = detail::require_int(r[0], "table count");
        auto v = detail::require_int(r[1], "table value");
        if (!entries.emplace(k, v).second) throw ValidationError("duplicate count in distance table");
    }
    std::vector<std::int64_t> values;
    for (const auto& [k, v] : entries) {
        if (k != static_cast<std::int64_t>(values.size()))
            throw ValidationError("distance table counts must be 0, 1, ..., k without gaps");
        values.push_back(v);
    }
    return DistanceKind::table(values, detail::require_int(detail::require(j, "default"), "table default"));
}

inline Json distance_to_json(const DistanceKind& kind) {
    switch (kind.tag()) {
    case DistanceKind::Tag::Drastic: return "drastic";
    case DistanceKind::Tag::Hamming: return "hamming";
    case DistanceKind::Tag::Table: break;
    }
    Json rows = Json::array();
    for (std::size_t k = 0; k < kind.table_values().size(); ++k) rows.push_back({k, kind.table_values()[k]});
    return Json{{"table", rows}, {"default", kind.table_default()}};
}

inline DistanceKind load_distance_file(const std::string& path) { return distance_from_json(read_json_file(path)); }

inline InstanceFile instance_from_json(const Json& j) {
    if (!j.is_object()) throw ValidationError("instance must be a JSON object");
    const Json& vars = detail::require(j, "variables");
    if (!vars.is_array()) throw ValidationError("'variables' must be a list of names");
    std::vector<std::string> names;
    for (const auto& v : vars) names.push_back(detail::require_string(v, "variable name"));
    Universe u(names);

    Formula mu = Formula::constant(true);
    if (j.contains("constraints")) mu = parse_formula(detail::require_string(j.at("constraints"), "'constraints'"), u);

    InstanceFile out{Instance{u, mu, {}}, std::nullopt, std::nullopt, std::nullopt};
    const bool has_profile = j.contains("profile");
    const bool has_sources = j.contains("sources");
    if (has_profile == has_sources) throw ValidationError("instance needs exactly one of 'profile' and 'sources'");
    if (has_profile) {
        out.instance.profile = detail::formula_list(j.at("profile"), u, "'profile'");
    } else {
        const Json& src = j.at("sources");
        if (!src.is_array()) throw ValidationError("'sources' must be a list of formula lists");
        SourceProfile sp;
        for (const auto& s : src) {
            sp.push_back(detail::formula_list(s, u, "source"));
            for (const auto& f : sp.back()) out.instance.profile.push_back(f);
        }
        out.sources = std::move(sp);
    }
    if (j.contains("distance")) out.distance = distance_from_json(j.at("distance"));
    if (j.contains("scheme")) out.scheme = parse_scheme(detail::require_string(j.at("scheme"), "'scheme'"));
    return out;
}

inline InstanceFile load_instance_file(const std::string& path) { return instance_from_json(read_json_file(path)); }

inline Json instance_to_json(const Instance& inst, const std::optional<DistanceKind>& kind = std::nullopt,
                             const std::optional<WeightScheme>& scheme = std::nullopt) {
    Json j;
    j["variables"] = inst.universe.names();
    j["constraints"] = print(inst.constraints, inst.universe);
    Json profile = Json::array();
    for (const auto& f : inst.profile) profile.push_back(print(f, inst.universe));
    j["profile"] = profile;
    if (kind) j["distance"] = distance_to_json(*kind);
    if (scheme) j["scheme"] = scheme->str();
    return j;
}

inline Json model_to_json(const Model& m, const Universe& u) {
    Json lits = Json::array();
    for (std::size_t i = 0; i < u.size(); ++i) lits.push_back(m.get(i) ? u.name(i) : "!" + u.name(i));
    return lits;
}

inline Model model_from_json(const Json& j, const Universe& u) {
    if (!j.is_array()) throw ValidationError("a model must be a list of literals");
    std::vector<std::string> lits;
    for (const auto& x : j) lits.push_back(detail::require_string(x, "literal"));
    return model_from_literals(lits, u);
}

inline Json weights_to_json(const WeightVector& w) {
    Json a = Json::array();
    for (const auto& x : w.values()) {
        if (denominator_of(x) == 1)
            a.push_back(static_cast<std::int64_t>(numerator_of(x)));
        else
            a.push_back(x.str());
    }
    return a;
}

/// {"models": [[literals]...], "witnesses": [{"model": [...], "weights": [...]}...]},
/// models in increasing order.
inline Json result_to_json(const MergeResult& r, const Universe& u) {
    Json models = Json::array();
    for (const auto& m : r.models) models.push_back(model_to_json(m, u));
    Json wit = Json::array();
    for (const auto& [m, w] : r.witnesses) wit.push_back(Json{{"model", model_to_json(m, u)}, {"weights", weights_to_json(w)}});
    return Json{{"models", models}, {"witnesses", wit}};
}

inline ModelSet models_from_json(const Json& j, const Universe& u) {
    ModelSet out;
    for (const auto& m : detail::require(j, "models")) out.push_back(model_from_json(m, u));
    normalize(out);
    return out;
}

}  // namespace wmerge
