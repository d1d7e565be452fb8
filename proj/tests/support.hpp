#ifndef GEOMREP_TESTS_SUPPORT_HPP
#define GEOMREP_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "geomrep/incidence.hpp"

namespace testsupport {

using geomrep::ElementId;
using geomrep::Flag;
using geomrep::IncidenceSystem;

inline constexpr std::uint32_t kSeed = 20240601;

/// Random system with `rank` types, every fiber nonempty, cross-type pairs kept with probability `density`.
inline IncidenceSystem random_system(std::mt19937& rng, std::size_t rank, std::size_t size, double density) {
    std::vector<std::string> labels;
    for (std::size_t t = 0; t < rank; ++t) labels.push_back("t" + std::to_string(t));
    geomrep::IncidenceBuilder b(labels);
    std::uniform_int_distribution<std::size_t> pick(0, rank - 1);
    std::vector<geomrep::TypeIndex> types;
    for (std::size_t e = 0; e < size; ++e) {
        types.push_back(static_cast<geomrep::TypeIndex>(e < rank ? e : pick(rng)));
    }
    std::shuffle(types.begin(), types.end(), rng);
    for (auto t : types) b.add_element(t);
    std::bernoulli_distribution keep(density);
    for (ElementId a = 0; a < size; ++a) {
        for (ElementId c = a + 1; c < size; ++c) {
            if (types[a] != types[c] && keep(rng)) b.add_incidence(a, c);
        }
    }
    return b.build();
}

/// Every flag, by brute force over increasing element lists.
inline std::vector<Flag> all_flags_naive(const IncidenceSystem& sys) {
    std::vector<Flag> out{{}};
    for (std::size_t k = 0; k < out.size(); ++k) {
        const Flag f = out[k];
        const ElementId start = f.empty() ? 0 : f.back() + 1;
        for (ElementId e = start; e < sys.size(); ++e) {
            bool ok = true;
            for (auto x : f) ok = ok && sys.type_of(x) != sys.type_of(e) && sys.incident(x, e);
            if (!ok) continue;
            Flag g = f;
            g.push_back(e);
            out.push_back(std::move(g));
        }
    }
    return out;
}

/// Flags with no element that can be added.
inline std::vector<Flag> maximal_flags_naive(const IncidenceSystem& sys) {
    std::vector<Flag> out;
    for (const auto& f : all_flags_naive(sys)) {
        bool maximal = true;
        for (ElementId e = 0; e < sys.size() && maximal; ++e) {
            if (std::find(f.begin(), f.end(), e) != f.end()) continue;
            bool joins = true;
            for (auto x : f) joins = joins && sys.type_of(x) != sys.type_of(e) && sys.incident(x, e);
            if (joins) maximal = false;
        }
        if (maximal) out.push_back(f);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_geometry_naive(const IncidenceSystem& sys) {
    for (const auto& f : maximal_flags_naive(sys)) {
        if (f.size() != sys.rank()) return false;
    }
    return true;
}

inline std::vector<Flag> chambers_naive(const IncidenceSystem& sys) {
    std::vector<Flag> out;
    for (const auto& f : all_flags_naive(sys)) {
        if (f.size() == sys.rank()) out.push_back(f);
    }
    return out;
}

/// Connected components of the incidence graph by repeated relaxation.
inline std::size_t component_count(const IncidenceSystem& sys) {
    std::vector<std::size_t> label(sys.size());
    std::iota(label.begin(), label.end(), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [a, b] : sys.incidences()) {
            auto m = std::min(label[a], label[b]);
            if (label[a] != m || label[b] != m) {
                label[a] = label[b] = m;
                changed = true;
            }
        }
    }
    return std::set<std::size_t>(label.begin(), label.end()).size();
}

/// Correlations counted by trying every permutation (at most 9 elements).
inline std::size_t correlation_count_naive(const IncidenceSystem& sys) {
    std::vector<geomrep::Point> p(sys.size());
    std::iota(p.begin(), p.end(), 0);
    std::size_t count = 0;
    do {
        bool ok = true;
        for (ElementId a = 0; a < sys.size() && ok; ++a) {
            for (ElementId b = 0; b < sys.size() && ok; ++b) {
                ok = (sys.type_of(a) == sys.type_of(b)) == (sys.type_of(p[a]) == sys.type_of(p[b])) &&
                     (a == b || sys.incident(a, b) == sys.incident(p[a], p[b]));
            }
        }
        if (ok) ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    return count;
}

inline IncidenceSystem triangle() {
    geomrep::IncidenceBuilder b({"vertex", "edge"});
    for (int i = 0; i < 3; ++i) b.add_element(0);
    for (int i = 0; i < 3; ++i) b.add_element(1);
    // edge 3 = {0,1}, edge 4 = {1,2}, edge 5 = {0,2}
    b.add_incidence(0, 3);
    b.add_incidence(1, 3);
    b.add_incidence(1, 4);
    b.add_incidence(2, 4);
    b.add_incidence(0, 5);
    b.add_incidence(2, 5);
    return b.build();
}

} // namespace testsupport

#endif // GEOMREP_TESTS_SUPPORT_HPP
