#include "sublinear/json.hpp"

#include <fstream>

#include "sublinear/error.hpp"

namespace sublinear {

using nlohmann::json;

json to_json(const DiscreteMeasure& m) {
    json atoms = json::array();
    for (const auto& a : m.atoms()) {
        atoms.push_back({a.point, a.weight});
    }
    return {{"atoms", std::move(atoms)}};
}

json to_json(const ScenarioFamily& fam) {
    json out = json::array();
    for (const auto& m : fam.measures()) {
        out.push_back(to_json(m));
    }
    return out;
}

json to_json(const MaximalDist& d) { return {{"mu_lo", d.mu_lo()}, {"mu_hi", d.mu_hi()}}; }

json to_json(const MleResult& r) {
    return {{"mu_lo_hat", r.mu_lo_hat}, {"mu_hi_hat", r.mu_hi_hat}, {"delta", r.delta}, {"n", r.n}};
}

json to_json(const VarianceEnvelope& e) {
    json windows = json::array();
    for (const auto& [j, v] : e.per_window) {
        windows.push_back({j, v});
    }
    return {{"sigma_lo_sq", e.sigma_lo_sq},
            {"sigma_hi_sq", e.sigma_hi_sq},
            {"per_window", std::move(windows)}};
}

DiscreteMeasure measure_from_json(const json& j) {
    if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array()) {
        throw DataError("measure must be an object with an \"atoms\" array");
    }
    std::vector<Atom> atoms;
    for (const auto& a : j["atoms"]) {
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
            throw DataError("each atom must be a [point, weight] pair of numbers");
        }
        atoms.push_back({a[0].get<double>(), a[1].get<double>()});
    }
    return DiscreteMeasure(std::move(atoms));
}

ScenarioFamily family_from_json(const json& j) {
    if (j.is_object()) {
        return ScenarioFamily({measure_from_json(j)});
    }
    if (!j.is_array()) {
        throw DataError("family must be an array of measures");
    }
    std::vector<DiscreteMeasure> measures;
    for (const auto& m : j) {
        measures.push_back(measure_from_json(m));
    }
    return ScenarioFamily(std::move(measures));
}

MaximalDist maximal_from_json(const json& j) {
    if (!j.is_object() || !j.contains("mu_lo") || !j.contains("mu_hi") ||
        !j["mu_lo"].is_number() || !j["mu_hi"].is_number()) {
        throw DataError("maximal distribution must be {\"mu_lo\": number, \"mu_hi\": number}");
    }
    return MaximalDist(j["mu_lo"].get<double>(), j["mu_hi"].get<double>());
}

ScenarioFamily load_family(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open '" + path.string() + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw DataError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
    return family_from_json(doc);
}

}  // namespace sublinear
