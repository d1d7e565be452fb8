#ifndef GEOMREP_REPORT_HPP
#define GEOMREP_REPORT_HPP

#include <cstdint>
#include <string>

#include "geomrep/autsolver.hpp"
#include "geomrep/coset.hpp"
#include "geomrep/freegroup.hpp"
#include "geomrep/interchange.hpp"

namespace geomrep {

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[h & 0xFU];
        h >>= 4U;
    }
    return out;
}

inline Json to_json(const GroupFingerprint& f) {
    Json hist = Json::object();
    for (const auto& [order, count] : f.element_orders) hist[to_string(order)] = to_string(count);
    return Json{{"order", to_string(f.order)}, {"element_orders", std::move(hist)}, {"center_order", to_string(f.center_order)}};
}

/// Type action as permutations of type labels.
inline Json type_action_json(const IncidenceSystem& sys, const PermGroup& action) {
    Json gens = Json::array();
    for (const auto& g : action.generators()) {
        Json images = Json::array();
        for (TypeIndex t = 0; t < sys.rank(); ++t) images.push_back(sys.type_label(g(t)));
        gens.push_back(std::move(images));
    }
    Json orbits = Json::array();
    for (const auto& orbit : action.orbits()) {
        Json labels = Json::array();
        for (auto t : orbit) labels.push_back(sys.type_label(t));
        orbits.push_back(std::move(labels));
    }
    Json types = Json::array();
    for (const auto& t : sys.types()) types.push_back(t);
    return Json{{"types", std::move(types)},
                {"order", to_string(action.order())},
                {"generators", std::move(gens)},
                {"orbits", std::move(orbits)}};
}

inline Json to_json(const IncidenceSystem& sys, const AutResult& r) {
    Json corr = Json::array();
    for (const auto& g : r.correlation_generators) corr.push_back(to_json(g));
    Json inner = Json::array();
    for (const auto& g : r.type_preserving_generators) inner.push_back(to_json(g));
    return Json{{"aut_order", to_string(r.aut_order)},
                {"aut_i_order", to_string(r.aut_i_order)},
                {"out_order", to_string(r.out_order)},
                {"type_action", type_action_json(sys, r.type_action)},
                {"correlation_generators", std::move(corr)},
                {"type_preserving_generators", std::move(inner)}};
}

inline Json to_json(const IncidenceSystem& sys, const RepresentationReport& r) {
    Json orbits = Json::array();
    for (const auto& orbit : r.type_orbits) {
        Json labels = Json::array();
        for (auto t : orbit) labels.push_back(sys.type_label(t));
        orbits.push_back(std::move(labels));
    }
    Json out{{"target", r.target},
             {"expected_inn", to_string(r.expected_inn)},
             {"expected_aut", to_string(r.expected_aut)},
             {"aut_i_order", to_string(r.computed.aut_i_order)},
             {"aut_order", to_string(r.computed.aut_order)},
             {"out_order", to_string(r.computed.out_order)},
             {"verdict", to_string(r.verdict)},
             {"explanation", r.explanation},
             {"type_orbits", std::move(orbits)}};
    if (r.aut_fingerprint) {
        out["aut_fingerprint"] = to_json(*r.aut_fingerprint);
        out["fingerprint_note"] = "fingerprint-equal, not proven isomorphic";
    }
    return out;
}

inline Json to_json(const CosetCheckReport& r, const std::vector<std::string>& labels) {
    Json failures = Json::array();
    for (const auto& f : r.failures) {
        Json j = Json::array();
        for (auto k : f.j) j.push_back(labels.at(k));
        failures.push_back(Json{{"J", std::move(j)}, {"i", labels.at(f.i)}});
    }
    return Json{{"pass", r.pass}, {"checked", r.checked}, {"failures", std::move(failures)}};
}

inline Json to_json(const free::FreeCheckReport& r) {
    return Json{{"pass", r.pass}, {"checked", r.checked}, {"counterexamples", r.counterexamples}};
}

} // namespace geomrep

#endif // GEOMREP_REPORT_HPP
