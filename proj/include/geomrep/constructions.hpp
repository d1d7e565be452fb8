#ifndef GEOMREP_CONSTRUCTIONS_HPP
#define GEOMREP_CONSTRUCTIONS_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "geomrep/autsolver.hpp"
#include "geomrep/incidence.hpp"
#include "geomrep/perm_group.hpp"
#include "geomrep/projective.hpp"

namespace geomrep {

/// min(k, n-k) over the totatives k of n, ascending.
inline std::vector<std::size_t> reduced_totatives(std::size_t n) {
    std::set<std::size_t> out;
    for (std::size_t k = 1; k < n; ++k) {
        if (std::gcd(k, n) == 1) out.insert(std::min(k, n - k));
    }
    return {out.begin(), out.end()};
}

inline std::size_t euler_phi(std::size_t n) {
    std::size_t count = 0;
    for (std::size_t k = 1; k <= n; ++k) count += std::gcd(k, n) == 1 ? 1 : 0;
    return count;
}

/// Polygon on vertices 0..n-1 with one edge class E_i = {v, v+i} per reduced
/// totative i. Edges of different classes are all incident. For even n the
/// vertices split by parity into types "-1" (odd) and "0" (even), and every
/// odd vertex is incident to every even one.
inline IncidenceSystem dihedral_geometry(std::size_t n) {
    if (n < 3) throw Error("n must be >= 3");
    const bool even = n % 2 == 0;
    const auto classes = reduced_totatives(n);
    std::vector<std::string> labels;
    if (even) labels.push_back("-1");
    labels.push_back("0");
    for (auto i : classes) labels.push_back(std::to_string(i));
    IncidenceBuilder b(labels);
    const TypeIndex vertex_type = even ? 1 : 0;
    for (std::size_t v = 0; v < n; ++v) b.add_element(even && v % 2 == 1 ? 0 : vertex_type);
    std::vector<std::vector<ElementId>> edges(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (std::size_t v = 0; v < n; ++v) {
            const ElementId e = b.add_element(static_cast<TypeIndex>(vertex_type + 1 + c));
            edges[c].push_back(e);
            b.add_incidence(static_cast<ElementId>(v), e);
            b.add_incidence(static_cast<ElementId>((v + classes[c]) % n), e);
        }
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (std::size_t d = c + 1; d < classes.size(); ++d) {
            for (auto e : edges[c]) {
                for (auto f : edges[d]) b.add_incidence(e, f);
            }
        }
    }
    if (even) {
        for (std::size_t u = 1; u < n; u += 2) {
            for (std::size_t w = 0; w < n; w += 2) b.add_incidence(static_cast<ElementId>(u), static_cast<ElementId>(w));
        }
    }
    return b.build();
}

/// K_n: vertices 0..n-1 (type "0") then edges {i<j} lexicographically (type "1").
inline IncidenceSystem complete_graph_geometry(std::size_t n) {
    if (n < 2) throw Error("n must be >= 2");
    IncidenceBuilder b({"0", "1"});
    for (std::size_t v = 0; v < n; ++v) b.add_element(0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto e = b.add_element(1);
            b.add_incidence(static_cast<ElementId>(i), e);
            b.add_incidence(static_cast<ElementId>(j), e);
        }
    }
    return b.build();
}

/// GQ(2,2): transpositions of {1..6} as points, products of three disjoint
/// transpositions as lines, incidence by containment. Both listed lexicographically.
inline IncidenceSystem gq22() {
    IncidenceBuilder b({"point", "line"});
    std::map<std::pair<int, int>, ElementId> point_id;
    for (int i = 1; i <= 6; ++i) {
        for (int j = i + 1; j <= 6; ++j) point_id[{i, j}] = b.add_element(0);
    }
    for (int a = 2; a <= 6; ++a) {
        std::vector<int> rest1;
        for (int x = 2; x <= 6; ++x) {
            if (x != a) rest1.push_back(x);
        }
        // rest1 has four points; first pairs with each of the other three
        for (std::size_t k = 1; k < 4; ++k) {
            std::vector<int> rest2;
            for (std::size_t x = 1; x < 4; ++x) {
                if (x != k) rest2.push_back(rest1[x]);
            }
            auto line = b.add_element(1);
            b.add_incidence(point_id.at({1, a}), line);
            b.add_incidence(point_id.at({rest1[0], rest1[k]}), line);
            b.add_incidence(point_id.at({rest2[0], rest2[1]}), line);
        }
    }
    return b.build();
}

/// Cube with a proper 2-colouring of its vertices: types "1" (even-parity
/// vertices of {0,1}^3), "2" (odd-parity vertices), "3" (edges), "4" (faces).
/// Containment incidence; adjacent vertices are incident when requested.
inline IncidenceSystem cube_geometry(bool vertex_adjacency = true) {
    IncidenceBuilder b({"1", "2", "3", "4"});
    std::array<ElementId, 8> vertex_id{};
    for (int parity = 0; parity < 2; ++parity) {
        for (unsigned v = 0; v < 8; ++v) {
            if (static_cast<int>(std::popcount(v) % 2) == parity) vertex_id[v] = b.add_element(static_cast<TypeIndex>(parity));
        }
    }
    std::vector<std::pair<unsigned, unsigned>> edges;
    for (unsigned u = 0; u < 8; ++u) {
        for (unsigned w = u + 1; w < 8; ++w) {
            if (std::popcount(u ^ w) == 1) edges.emplace_back(u, w);
        }
    }
    std::vector<ElementId> edge_id;
    for (auto [u, w] : edges) {
        auto e = b.add_element(2);
        edge_id.push_back(e);
        b.add_incidence(vertex_id[u], e);
        b.add_incidence(vertex_id[w], e);
        if (vertex_adjacency) b.add_incidence(vertex_id[u], vertex_id[w]);
    }
    for (unsigned bit = 0; bit < 3; ++bit) {
        for (unsigned value = 0; value < 2; ++value) {
            auto face = b.add_element(3);
            auto on_face = [&](unsigned v) { return ((v >> bit) & 1U) == value; };
            for (unsigned v = 0; v < 8; ++v) {
                if (on_face(v)) b.add_incidence(vertex_id[v], face);
            }
            for (std::size_t k = 0; k < edges.size(); ++k) {
                if (on_face(edges[k].first) && on_face(edges[k].second)) b.add_incidence(edge_id[k], face);
            }
        }
    }
    return b.build();
}

enum class FacePetrieRule { shared_edge, shared_vertex, always };

inline FacePetrieRule parse_face_petrie_rule(const std::string& name) {
    if (name == "shared-edge") return FacePetrieRule::shared_edge;
    if (name == "shared-vertex") return FacePetrieRule::shared_vertex;
    if (name == "always") return FacePetrieRule::always;
    throw Error("unknown face-Petrie rule '" + name + "' (expected shared-edge, shared-vertex or always)");
}

inline std::string to_string(FacePetrieRule rule) {
    switch (rule) {
    case FacePetrieRule::shared_edge: return "shared-edge";
    case FacePetrieRule::shared_vertex: return "shared-vertex";
    case FacePetrieRule::always: return "always";
    }
    return "?";
}

/// The Petersen graph on the 2-subsets of {1..5} and its pentagons.
struct PetersenData {
    std::vector<std::pair<int, int>> vertices;             // lexicographic 2-subsets
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // disjoint pairs, by vertex index
    std::vector<std::vector<std::uint32_t>> pentagons;     // vertex cycles, canonical start and direction
    std::vector<std::vector<std::uint32_t>> pentagon_edges;  // sorted edge indices
    std::vector<int> orbit_of;                             // 0 for the orbit of pentagon 0, else 1
};

inline PetersenData petersen_data() {
    PetersenData d;
    for (int i = 1; i <= 5; ++i) {
        for (int j = i + 1; j <= 5; ++j) d.vertices.emplace_back(i, j);
    }
    const auto nv = static_cast<std::uint32_t>(d.vertices.size());
    auto disjoint = [&](std::uint32_t a, std::uint32_t b) {
        auto [p, q] = d.vertices[a];
        auto [r, s] = d.vertices[b];
        return p != r && p != s && q != r && q != s;
    };
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> edge_index;
    for (std::uint32_t a = 0; a < nv; ++a) {
        for (std::uint32_t b = a + 1; b < nv; ++b) {
            if (disjoint(a, b)) {
                edge_index[{a, b}] = static_cast<std::uint32_t>(d.edges.size());
                d.edges.emplace_back(a, b);
            }
        }
    }
    // 5-cycles starting at their minimum vertex, second vertex < last vertex
    std::vector<std::uint32_t> path;
    auto extend = [&](auto& self) -> void {
        if (path.size() == 5) {
            if (disjoint(path.back(), path.front()) && path[1] < path[4]) d.pentagons.push_back(path);
            return;
        }
        for (std::uint32_t v = path.front() + 1; v < nv; ++v) {
            if (disjoint(path.back(), v) && std::find(path.begin(), path.end(), v) == path.end()) {
                path.push_back(v);
                self(self);
                path.pop_back();
            }
        }
    };
    for (std::uint32_t s = 0; s < nv; ++s) {
        path = {s};
        extend(extend);
    }
    std::map<std::vector<std::uint32_t>, std::size_t> by_edges;
    for (std::size_t c = 0; c < d.pentagons.size(); ++c) {
        std::vector<std::uint32_t> es;
        for (std::size_t k = 0; k < 5; ++k) {
            auto a = d.pentagons[c][k];
            auto b = d.pentagons[c][(k + 1) % 5];
            es.push_back(edge_index.at({std::min(a, b), std::max(a, b)}));
        }
        std::sort(es.begin(), es.end());
        by_edges[es] = c;
        d.pentagon_edges.push_back(std::move(es));
    }
    // A_5 = <(1 2 3), (1 2 3 4 5)> acting on 2-subsets, then on pentagons
    const std::vector<std::array<int, 6>> gens{{0, 2, 3, 1, 4, 5}, {0, 2, 3, 4, 5, 1}};
    auto vertex_image = [&](const std::array<int, 6>& g, std::uint32_t v) {
        int a = g[static_cast<std::size_t>(d.vertices[v].first)];
        int b = g[static_cast<std::size_t>(d.vertices[v].second)];
        auto it = std::find(d.vertices.begin(), d.vertices.end(), std::make_pair(std::min(a, b), std::max(a, b)));
        return static_cast<std::uint32_t>(it - d.vertices.begin());
    };
    d.orbit_of.assign(d.pentagons.size(), 1);
    std::vector<std::size_t> queue{0};
    d.orbit_of[0] = 0;
    for (std::size_t k = 0; k < queue.size(); ++k) {
        for (const auto& g : gens) {
            std::vector<std::uint32_t> es;
            for (auto e : d.pentagon_edges[queue[k]]) {
                auto a = vertex_image(g, d.edges[e].first);
                auto b = vertex_image(g, d.edges[e].second);
                es.push_back(edge_index.at({std::min(a, b), std::max(a, b)}));
            }
            std::sort(es.begin(), es.end());
            auto c = by_edges.at(es);
            if (d.orbit_of[c] != 0) {
                d.orbit_of[c] = 0;
                queue.push_back(c);
            }
        }
    }
    return d;
}

/// Hemidodecahedron with its Petrie polygons: types "0" vertices, "1" edges,
/// "2" faces (A_5-orbit of the first pentagon), "3" Petrie polygons.
inline IncidenceSystem hemidodecahedron_petrie(FacePetrieRule rule = FacePetrieRule::shared_edge) {
    const auto d = petersen_data();
    IncidenceBuilder b({"0", "1", "2", "3"});
    for (std::size_t v = 0; v < d.vertices.size(); ++v) b.add_element(0);
    std::vector<ElementId> edge_id;
    for (auto [u, w] : d.edges) {
        auto e = b.add_element(1);
        edge_id.push_back(e);
        b.add_incidence(u, e);
        b.add_incidence(w, e);
    }
    std::vector<ElementId> cycle_id(d.pentagons.size());
    for (int orbit = 0; orbit < 2; ++orbit) {
        for (std::size_t c = 0; c < d.pentagons.size(); ++c) {
            if (d.orbit_of[c] != orbit) continue;
            cycle_id[c] = b.add_element(static_cast<TypeIndex>(2 + orbit));
            for (auto v : d.pentagons[c]) b.add_incidence(v, cycle_id[c]);
            for (auto e : d.pentagon_edges[c]) b.add_incidence(edge_id[e], cycle_id[c]);
        }
    }
    for (std::size_t f = 0; f < d.pentagons.size(); ++f) {
        for (std::size_t p = 0; p < d.pentagons.size(); ++p) {
            if (d.orbit_of[f] != 0 || d.orbit_of[p] != 1) continue;
            bool incident = rule == FacePetrieRule::always;
            if (rule == FacePetrieRule::shared_edge) {
                const auto& a = d.pentagon_edges[f];
                const auto& c = d.pentagon_edges[p];
                incident = !detail::intersect_sorted(a, c).empty();
            } else if (rule == FacePetrieRule::shared_vertex) {
                for (auto v : d.pentagons[f]) {
                    incident = incident || std::find(d.pentagons[p].begin(), d.pentagons[p].end(), v) != d.pentagons[p].end();
                }
            }
            if (incident) b.add_incidence(cycle_id[f], cycle_id[p]);
        }
    }
    return b.build();
}

/// Subspaces of PG(n-1,q) together with the ordered quadruples of distinct
/// collinear points, one type per cross-ratio value outside the base field.
struct CrossRatioGeometry {
    IncidenceSystem system;
    ProjectiveSpace space;
    /// No quadruple types exist (field equals base field): the system is the projective space.
    bool degenerate = false;
    /// Elements [0, subspace_count) are subspaces in `ProjectiveSpace::element_id` order,
    /// restricted to the kept subspace types.
    std::size_t subspace_count = 0;
    std::size_t subspace_types = 0;
    std::vector<std::array<std::uint32_t, 4>> quadruples;  // point indices; element subspace_count + k
    std::vector<FieldElement> values;                      // cross-ratio of each quadruple type
};

inline constexpr std::size_t kMaxCrossRatioIncidences = 20'000'000;

/// `base_degree` fixes the base field GF(p^base_degree). With `truncate`, only
/// points and lines are kept and the quadruple values are restricted to the
/// Galois orbit of the primitive element over the base field.
inline CrossRatioGeometry pgl_cross_ratio_geometry(std::size_t n, const FiniteField& field, std::uint32_t base_degree = 1,
                                                   bool truncate = false) {
    if (n < 3) throw Error("cross-ratio geometry needs n >= 3");
    if (base_degree == 0 || field.degree() % base_degree != 0) {
        throw Error("base field degree must divide the extension degree");
    }
    ProjectiveSpace space(field, n - 1);
    CrossRatioGeometry out{IncidenceSystem(), space, false, 0, 0, {}, {}};

    std::vector<FieldElement> values;
    for (auto x : field.elements()) {
        if (!field.in_subfield(x, base_degree)) values.push_back(x);
    }
    if (truncate && !values.empty()) {
        // Galois orbit of the primitive element over the base field
        auto lambda = field.primitive_element();
        std::uint64_t step = 1;
        for (std::uint32_t i = 0; i < base_degree; ++i) step *= field.characteristic();
        std::vector<FieldElement> orbit{lambda};
        for (auto y = field.pow(lambda, step); y != lambda; y = field.pow(y, step)) orbit.push_back(y);
        std::sort(orbit.begin(), orbit.end());
        values = orbit;
    }
    out.degenerate = values.empty();
    out.values = values;

    const std::size_t kept_dims = truncate ? 2 : n - 1;
    out.subspace_types = kept_dims;
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < kept_dims; ++j) labels.push_back(std::to_string(j));
    for (auto v : values) labels.push_back("Q(" + field.format(v) + ")");

    const auto& lines = space.subspaces(1);
    std::size_t quads_per_line = 1;
    for (std::size_t i = 0; i < 4; ++i) quads_per_line *= (lines[0].points.size() - i);
    const std::size_t quad_total = quads_per_line * lines.size();
    if (!values.empty()) {
        // every quadruple has a cross-ratio outside {0, 1}, spread evenly over q-2 values
        const double per_type = static_cast<double>(quad_total) / static_cast<double>(field.order() - 2);
        const double pairs = per_type * per_type * static_cast<double>(values.size() * (values.size() - 1)) / 2.0;
        if (pairs > static_cast<double>(kMaxCrossRatioIncidences)) {
            throw SizeError("cross-ratio geometry would have too many incidences");
        }
    }

    IncidenceBuilder b(labels);
    for (std::size_t j = 0; j < kept_dims; ++j) {
        for (std::size_t i = 0; i < space.subspaces(j).size(); ++i) b.add_element(static_cast<TypeIndex>(j));
    }
    out.subspace_count = b.size();
    for (std::size_t j = 1; j < kept_dims; ++j) {
        for (std::uint32_t i = 0; i < space.subspaces(j).size(); ++i) {
            const auto& big = space.subspaces(j)[i].points;
            for (auto p : big) b.add_incidence(space.element_id(0, p), space.element_id(j, i));
            for (std::size_t s = 1; s < j; ++s) {
                for (std::uint32_t k = 0; k < space.subspaces(s).size(); ++k) {
                    const auto& small = space.subspaces(s)[k].points;
                    if (std::includes(big.begin(), big.end(), small.begin(), small.end())) {
                        b.add_incidence(space.element_id(s, k), space.element_id(j, i));
                    }
                }
            }
        }
    }
    if (out.degenerate) {
        out.system = b.build();
        return out;
    }

    // subspaces of dimension >= 1 containing each line
    std::vector<std::vector<ElementId>> above(lines.size());
    for (std::uint32_t l = 0; l < lines.size(); ++l) {
        for (std::size_t j = 1; j < kept_dims; ++j) {
            for (std::uint32_t i = 0; i < space.subspaces(j).size(); ++i) {
                const auto& big = space.subspaces(j)[i].points;
                if (std::includes(big.begin(), big.end(), lines[l].points.begin(), lines[l].points.end())) {
                    above[l].push_back(space.element_id(j, i));
                }
            }
        }
    }
    std::vector<std::vector<ElementId>> by_type(values.size());
    for (std::uint32_t l = 0; l < lines.size(); ++l) {
        const auto& pts = lines[l].points;
        const std::size_t m = pts.size();
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t c = 0; c < m; ++c) {
                for (std::size_t e = 0; e < m; ++e) {
                    for (std::size_t g = 0; g < m; ++g) {
                        if (a == c || a == e || a == g || c == e || c == g || e == g) continue;
                        const std::array<std::uint32_t, 4> quad{pts[a], pts[c], pts[e], pts[g]};
                        auto cr = cross_ratio(field, space.point(quad[0]), space.point(quad[1]), space.point(quad[2]),
                                              space.point(quad[3]));
                        auto it = std::find(values.begin(), values.end(), cr);
                        if (it == values.end()) continue;
                        const auto t = static_cast<std::size_t>(it - values.begin());
                        auto id = b.add_element(static_cast<TypeIndex>(kept_dims + t));
                        out.quadruples.push_back(quad);
                        by_type[t].push_back(id);
                        for (auto p : quad) b.add_incidence(space.element_id(0, p), id);
                        for (auto x : above[l]) b.add_incidence(x, id);
                    }
                }
            }
        }
    }
    std::size_t pair_count = 0;
    for (std::size_t s = 0; s < values.size(); ++s) {
        for (std::size_t t = s + 1; t < values.size(); ++t) pair_count += by_type[s].size() * by_type[t].size();
    }
    b.reserve_incidences(pair_count);
    for (std::size_t s = 0; s < values.size(); ++s) {
        for (std::size_t t = s + 1; t < values.size(); ++t) {
            for (auto x : by_type[s]) {
                for (auto y : by_type[t]) b.add_incidence(x, y);
            }
        }
    }
    out.system = b.build();
    return out;
}

struct TruncationExtension {
    std::optional<Permutation> map;
    std::string reason;  // why no extension exists, when `map` is empty
};

/// Extends a correlation of the subspace truncation by acting on quadruples
/// coordinate-wise. `f` has degree `subspace_count`.
inline TruncationExtension extend_truncation_correlation(const CrossRatioGeometry& geom, const Permutation& f) {
    if (f.degree() != geom.subspace_count) throw Error("map degree does not match the subspace truncation");
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < geom.subspace_types; ++j) labels.push_back(std::to_string(j));
    const auto trunc = truncation(geom.system, labels);
    if (!is_correlation(trunc.system, f)) throw Error("map is not a correlation of the subspace truncation");

    std::map<std::array<std::uint32_t, 4>, std::size_t> index;
    for (std::size_t k = 0; k < geom.quadruples.size(); ++k) index.emplace(geom.quadruples[k], k);
    const std::size_t points = geom.space.point_count();
    std::vector<Point> images(geom.system.size());
    for (ElementId e = 0; e < geom.subspace_count; ++e) images[e] = f(e);
    for (std::size_t k = 0; k < geom.quadruples.size(); ++k) {
        std::array<std::uint32_t, 4> image{};
        for (std::size_t i = 0; i < 4; ++i) {
            const Point p = f(geom.quadruples[k][i]);
            if (p >= points) {
                return {std::nullopt, "a point is sent to a non-point, so quadruple " + std::to_string(k) +
                                          " has no image among the quadruple elements"};
            }
            image[i] = p;
        }
        auto it = index.find(image);
        if (it == index.end()) {
            return {std::nullopt, "image of quadruple " + std::to_string(k) + " is not an element"};
        }
        images[geom.subspace_count + k] = static_cast<Point>(geom.subspace_count + it->second);
    }
    Permutation phi(std::move(images));
    if (!is_correlation(geom.system, phi)) return {std::nullopt, "coordinate-wise extension is not a correlation"};
    return {std::move(phi), {}};
}

/// Correlations of the cross-ratio geometry obtained from its subspace
/// truncation: every type-preserving truncation automorphism is extended,
/// and the remaining coset (dualities) is tested through one representative.
struct ExtensionAnalysis {
    AutResult truncation;  // correlation group of the subspace truncation
    AutResult extended;    // group generated by the successful extensions
    std::size_t extended_count = 0;
    /// Verdicts for the non-type-preserving truncation correlations tried.
    std::vector<TruncationExtension> coset_attempts;
};

inline ExtensionAnalysis analyse_by_extension(const CrossRatioGeometry& geom) {
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < geom.subspace_types; ++j) labels.push_back(std::to_string(j));
    const auto trunc = truncation(geom.system, labels);
    ExtensionAnalysis out;
    out.truncation = correlation_group(trunc.system);
    std::vector<Permutation> gens;
    for (const auto& f : out.truncation.type_preserving_generators) {
        auto e = extend_truncation_correlation(geom, f);
        if (!e.map) throw Error("type-preserving collineation failed to extend: " + e.reason);
        gens.push_back(std::move(*e.map));
    }
    out.extended_count = gens.size();
    for (const auto& f : out.truncation.correlation_generators) {
        bool preserving = true;
        for (ElementId e = 0; e < trunc.system.size() && preserving; ++e) {
            preserving = trunc.system.type_of(e) == trunc.system.type_of(f(e));
        }
        if (preserving) continue;
        auto e = extend_truncation_correlation(geom, f);
        if (e.map) gens.push_back(*e.map);
        out.coset_attempts.push_back(std::move(e));
        break;  // one representative decides the whole coset
    }
    out.extended = aut_result_from_generators(geom.system, std::move(gens));
    return out;
}

} // namespace geomrep

#endif // GEOMREP_CONSTRUCTIONS_HPP
