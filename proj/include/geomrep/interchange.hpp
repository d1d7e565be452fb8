#ifndef GEOMREP_INTERCHANGE_HPP
#define GEOMREP_INTERCHANGE_HPP

#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "geomrep/incidence.hpp"
#include "geomrep/perm_group.hpp"

namespace geomrep {

using Json = nlohmann::ordered_json;

/// `{"types":[...], "elements":[{"id":..,"type":..}], "incidences":[[a,b],...]}`
inline Json to_json(const IncidenceSystem& sys) {
    Json types = Json::array();
    for (const auto& t : sys.types()) types.push_back(t);
    Json elements = Json::array();
    for (ElementId e = 0; e < sys.size(); ++e) {
        elements.push_back(Json{{"id", e}, {"type", sys.type_label(sys.type_of(e))}});
    }
    Json incidences = Json::array();
    for (auto [a, b] : sys.incidences()) incidences.push_back(Json::array({a, b}));
    return Json{{"types", std::move(types)}, {"elements", std::move(elements)}, {"incidences", std::move(incidences)}};
}

/// Parses the interchange format. Element ids must be exactly `0..N-1`
/// (in any order); out-of-range incidence ids are kept for `validate`.
inline IncidenceSystem system_from_json(const Json& j) {
    try {
        std::vector<std::string> types = j.at("types").get<std::vector<std::string>>();
        std::unordered_map<std::string, TypeIndex> index;
        for (TypeIndex t = 0; t < types.size(); ++t) index.emplace(types[t], t);
        const auto& elements = j.at("elements");
        std::vector<TypeIndex> element_types(elements.size());
        std::vector<bool> seen(elements.size(), false);
        for (const auto& el : elements) {
            auto id = el.at("id").get<std::int64_t>();
            if (id < 0 || static_cast<std::size_t>(id) >= elements.size() || seen[static_cast<std::size_t>(id)]) {
                throw Error("element ids must be exactly 0..N-1, got " + std::to_string(id));
            }
            seen[static_cast<std::size_t>(id)] = true;
            auto label = el.at("type").get<std::string>();
            auto it = index.find(label);
            if (it == index.end()) throw Error("element " + std::to_string(id) + " has unknown type '" + label + "'");
            element_types[static_cast<std::size_t>(id)] = it->second;
        }
        std::vector<std::pair<ElementId, ElementId>> pairs;
        for (const auto& p : j.at("incidences")) {
            if (!p.is_array() || p.size() != 2) throw Error("incidence entries must be pairs");
            auto a = p[0].get<std::int64_t>();
            auto b = p[1].get<std::int64_t>();
            if (a < 0 || b < 0) throw Error("negative element id in incidence");
            pairs.emplace_back(static_cast<ElementId>(a), static_cast<ElementId>(b));
        }
        return IncidenceSystem(std::move(types), std::move(element_types), pairs);
    } catch (const Json::exception& e) {
        throw Error(std::string("malformed geometry JSON: ") + e.what());
    }
}

inline IncidenceSystem system_from_string(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw Error(std::string("malformed geometry JSON: ") + e.what());
    }
    return system_from_json(j);
}

/// Graphviz export; node labels are `"{id}:{type}"`.
inline std::string to_dot(const IncidenceSystem& sys) {
    std::ostringstream out;
    out << "graph incidence {\n";
    for (ElementId e = 0; e < sys.size(); ++e) {
        out << "  " << e << " [label=\"" << e << ':' << sys.type_label(sys.type_of(e)) << "\"];\n";
    }
    for (auto [a, b] : sys.incidences()) out << "  " << a << " -- " << b << ";\n";
    out << "}\n";
    return out.str();
}

inline Json to_json(const Permutation& p) { return Json(p.images()); }

inline Permutation permutation_from_json(const Json& j) {
    return Permutation(j.get<std::vector<Point>>());
}

inline Json to_json(const PermGroup& g) {
    Json gens = Json::array();
    for (const auto& p : g.generators()) gens.push_back(to_json(p));
    return Json{{"degree", g.degree()}, {"generators", std::move(gens)}};
}

inline PermGroup group_from_json(const Json& j) {
    auto degree = j.at("degree").get<std::size_t>();
    std::vector<Permutation> gens;
    for (const auto& p : j.at("generators")) gens.push_back(permutation_from_json(p));
    return PermGroup(degree, std::move(gens));
}

} // namespace geomrep

#endif // GEOMREP_INTERCHANGE_HPP
