#include <gtest/gtest.h>

#include <numeric>

#include "geomrep/constructions.hpp"
#include "support.hpp"

using namespace geomrep;

namespace {

std::size_t phi_naive(std::size_t n) {
    std::size_t count = 0;
    for (std::size_t k = 1; k <= n; ++k) count += std::gcd(k, n) == 1 ? 1 : 0;
    return count;
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::vector<std::string> dihedral_types(std::size_t n) {
    std::vector<std::string> out;
    if (n % 2 == 0) out.push_back("-1");
    out.push_back("0");
    std::set<std::size_t> reduced;
    for (std::size_t k = 1; k < n; ++k) {
        if (std::gcd(k, n) == 1) reduced.insert(std::min(k, n - k));
    }
    for (auto k : reduced) out.push_back(std::to_string(k));
    return out;
}

const CrossRatioGeometry& pg24_geometry() {
    static const CrossRatioGeometry geom = pgl_cross_ratio_geometry(3, make_field(2, 2));
    return geom;
}

Permutation restrict_to(const Permutation& p, std::size_t degree) {
    return Permutation(std::vector<Point>(p.images().begin(), p.images().begin() + static_cast<std::ptrdiff_t>(degree)));
}

} // namespace

TEST(Dihedral, Examples) {
    auto d10 = dihedral_geometry(5);
    EXPECT_EQ(d10.size(), 15U);
    EXPECT_EQ(d10.types(), (std::vector<std::string>{"0", "1", "2"}));
    for (TypeIndex t = 0; t < 3; ++t) EXPECT_EQ(d10.elements_of_type(t).size(), 5U);
    auto d16 = dihedral_geometry(8);
    EXPECT_EQ(d16.size(), 24U);
    EXPECT_EQ(d16.types(), (std::vector<std::string>{"-1", "0", "1", "3"}));
    EXPECT_EQ(d16.elements_of_type(0).size(), 4U);
    EXPECT_EQ(d16.elements_of_type(1).size(), 4U);
    auto tri = dihedral_geometry(3);
    EXPECT_EQ(tri.types(), (std::vector<std::string>{"0", "1"}));
    EXPECT_EQ(tri.size(), 6U);
    EXPECT_EQ(incidence_graph(tri).girth(), 6U);
    EXPECT_THROW((void)dihedral_geometry(2), Error);
}

TEST(Dihedral, TypesetAndEdgeClasses) {
    for (std::size_t n = 3; n <= 12; ++n) {
        auto sys = dihedral_geometry(n);
        EXPECT_EQ(sys.types(), dihedral_types(n));
        EXPECT_EQ(euler_phi(n), phi_naive(n));
        EXPECT_EQ(sys.size(), n + n * phi_naive(n) / 2);
        const std::size_t first_edge_type = n % 2 == 0 ? 2 : 1;
        for (TypeIndex t = static_cast<TypeIndex>(first_edge_type); t < sys.rank(); ++t) {
            const auto i = std::stoul(sys.type_label(t));
            for (auto e : sys.elements_of_type(t)) {
                std::vector<std::size_t> ends;
                for (auto x : sys.neighbors(e)) {
                    if (x < n) ends.push_back(x);
                }
                ASSERT_EQ(ends.size(), 2U);
                const auto gap = (ends[1] - ends[0]) % n;
                EXPECT_EQ(std::min(gap, n - gap), i);
            }
        }
    }
}

TEST(Dihedral, CorrelationOrdersForAllSmallN) {
    for (std::size_t n = 3; n <= 12; ++n) {
        auto r = correlation_group(dihedral_geometry(n));
        const std::size_t expected_aut = n == 3 ? 12 : n * phi_naive(n);
        const std::size_t expected_inn = n % 2 == 1 ? 2 * n : n;
        EXPECT_EQ(r.aut_order, BigInt(expected_aut)) << "n=" << n;
        EXPECT_EQ(r.aut_i_order, BigInt(expected_inn)) << "n=" << n;
    }
}

TEST(Dihedral, StructuralPropertiesAreReported) {
    for (std::size_t n = 4; n <= 12; ++n) {
        auto sys = dihedral_geometry(n);
        const bool geometry = is_geometry(sys);
        const bool firm = is_firm(sys);
        const bool rc = geometry && is_residually_connected(sys);
        RecordProperty("n" + std::to_string(n), std::string(geometry ? "geometry" : "not-geometry") +
                                                    (firm ? ",firm" : ",not-firm") + (rc ? ",rc" : ",not-rc"));
        EXPECT_EQ(geometry, testsupport::is_geometry_naive(sys));
    }
}

TEST(CompleteGraph, CountsAndOrders) {
    for (std::size_t n : {3U, 4U, 5U, 7U}) {
        auto sys = complete_graph_geometry(n);
        EXPECT_EQ(sys.size(), n + n * (n - 1) / 2);
        for (auto v : sys.elements_of_type(0)) EXPECT_EQ(sys.neighbors(v).size(), n - 1);
        auto r = correlation_group(sys);
        EXPECT_EQ(r.aut_i_order, BigInt(factorial(n)));
        EXPECT_EQ(r.aut_order, n == 3 ? BigInt(12) : BigInt(factorial(n)));
    }
    EXPECT_THROW((void)complete_graph_geometry(1), Error);
}

TEST(Gq22, Axioms) {
    auto gq = gq22();
    EXPECT_EQ(gq.elements_of_type(0).size(), 15U);
    EXPECT_EQ(gq.elements_of_type(1).size(), 15U);
    for (ElementId e = 0; e < gq.size(); ++e) EXPECT_EQ(gq.neighbors(e).size(), 3U);
    EXPECT_EQ(incidence_graph(gq).girth(), 8U);
    // element 0 is the transposition (1 2)
    EXPECT_EQ(gq.neighbors(0).size(), 3U);
    // for every antiflag (p, L) exactly one point of L is collinear with p
    for (auto p : gq.elements_of_type(0)) {
        for (auto l : gq.elements_of_type(1)) {
            if (gq.incident(p, l)) continue;
            std::size_t collinear = 0;
            for (auto x : gq.neighbors(l)) {
                for (auto m : gq.neighbors(p)) collinear += gq.incident(x, m) ? 1 : 0;
            }
            EXPECT_EQ(collinear, 1U);
        }
    }
}

TEST(Gq22, CorrelationGroup) {
    auto gq = gq22();
    auto r = correlation_group(gq);
    EXPECT_EQ(r.aut_order, 1440);
    EXPECT_EQ(r.aut_i_order, 720);
    EXPECT_EQ(r.type_action.order(), 2);
    EXPECT_EQ(PermGroup(gq.size(), r.correlation_generators).fingerprint(2000).center_order, 1);
}

TEST(Cube, Structure) {
    auto cube = cube_geometry();
    EXPECT_EQ(cube.size(), 26U);
    EXPECT_EQ(cube.types(), (std::vector<std::string>{"1", "2", "3", "4"}));
    for (auto e : cube.elements_of_type(2)) {
        std::size_t p1 = 0;
        std::size_t p2 = 0;
        for (auto x : cube.neighbors(e)) {
            p1 += cube.type_of(x) == 0 ? 1 : 0;
            p2 += cube.type_of(x) == 1 ? 1 : 0;
        }
        EXPECT_EQ(p1, 1U);
        EXPECT_EQ(p2, 1U);
        std::vector<ElementId> ends;
        for (auto x : cube.neighbors(e)) {
            if (cube.type_of(x) <= 1) ends.push_back(x);
        }
        auto c = extend_flag_to_chamber(cube, {ends[0], ends[1], e});
        ASSERT_TRUE(c);
        EXPECT_EQ(c->size(), 4U);
    }
}

TEST(Cube, OrdersAndVertexOrbits) {
    for (bool adjacency : {true, false}) {
        auto cube = cube_geometry(adjacency);
        auto r = correlation_group(cube);
        EXPECT_EQ(r.aut_i_order, 24);
        EXPECT_EQ(r.aut_order, 48);
        PermGroup inner(cube.size(), r.type_preserving_generators);
        std::vector<std::vector<Point>> vertex_orbits;
        for (const auto& o : inner.orbits()) {
            if (cube.type_of(o.front()) <= 1) vertex_orbits.push_back(o);
        }
        ASSERT_EQ(vertex_orbits.size(), 2U);
        EXPECT_EQ(vertex_orbits[0].size(), 4U);
        EXPECT_EQ(vertex_orbits[1].size(), 4U);
    }
}

TEST(Hemidodecahedron, PetersenSkeleton) {
    auto d = petersen_data();
    EXPECT_EQ(d.vertices.size(), 10U);
    EXPECT_EQ(d.edges.size(), 15U);
    std::vector<std::size_t> degree(10, 0);
    for (auto [a, b] : d.edges) {
        ++degree[a];
        ++degree[b];
    }
    for (auto k : degree) EXPECT_EQ(k, 3U);
    auto sys = hemidodecahedron_petrie();
    auto skeleton = truncation(sys, {"0", "1"}).system;
    Graph g;
    g.adjacency.resize(10);
    for (auto [a, b] : d.edges) {
        g.adjacency[a].push_back(b);
        g.adjacency[b].push_back(a);
    }
    EXPECT_EQ(g.girth(), 5U);
    EXPECT_EQ(skeleton.size(), 25U);
    EXPECT_EQ(d.pentagons.size(), 12U);
}

TEST(Hemidodecahedron, PentagonsSplitSixAndSixUnderA5) {
    auto d = petersen_data();
    // A_5 from the even permutations of S_5, acting on 2-subsets
    PermGroup a5(5, {Permutation::from_cycles(5, {{0, 1, 2}}), Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})});
    auto elements = a5.enumerate_elements(60);
    ASSERT_EQ(elements.size(), 60U);
    auto vertex_of = [&](int a, int b) {
        auto key = std::make_pair(std::min(a, b), std::max(a, b));
        return static_cast<std::uint32_t>(std::find(d.vertices.begin(), d.vertices.end(), key) - d.vertices.begin());
    };
    auto vertex_set = [&](const std::vector<std::uint32_t>& cycle) {
        std::set<std::uint32_t> s(cycle.begin(), cycle.end());
        return s;
    };
    std::map<std::set<std::uint32_t>, std::size_t> cycle_index;
    for (std::size_t c = 0; c < d.pentagons.size(); ++c) cycle_index[vertex_set(d.pentagons[c])] = c;
    ASSERT_EQ(cycle_index.size(), 12U);
    std::set<std::size_t> orbit0;
    for (const auto& g : elements) {
        std::set<std::uint32_t> image;
        for (auto v : d.pentagons[0]) {
            auto [a, b] = d.vertices[v];
            image.insert(vertex_of(static_cast<int>(g(static_cast<Point>(a - 1))) + 1,
                                   static_cast<int>(g(static_cast<Point>(b - 1))) + 1));
        }
        orbit0.insert(cycle_index.at(image));
    }
    EXPECT_EQ(orbit0.size(), 6U);
    for (std::size_t c = 0; c < 12; ++c) EXPECT_EQ(d.orbit_of[c] == 0, orbit0.count(c) == 1);
}

TEST(Hemidodecahedron, TruncationIsTheHemidodecahedron) {
    auto sys = hemidodecahedron_petrie();
    EXPECT_EQ(sys.size(), 37U);
    auto hemi = truncation(sys, {"0", "1", "2"}).system;
    EXPECT_EQ(hemi.size(), 31U);
    EXPECT_TRUE(is_geometry(hemi));
    EXPECT_TRUE(is_firm(hemi));
    EXPECT_TRUE(is_residually_connected(hemi));
    for (auto f : hemi.elements_of_type(2)) EXPECT_EQ(hemi.neighbors(f).size(), 10U);
    // every edge lies on two faces
    for (auto e : hemi.elements_of_type(1)) {
        std::size_t faces = 0;
        for (auto x : hemi.neighbors(e)) faces += hemi.type_of(x) == 2 ? 1 : 0;
        EXPECT_EQ(faces, 2U);
    }
}

TEST(Hemidodecahedron, RulesAndOrders) {
    bool some_rule_matches = false;
    for (auto rule : {FacePetrieRule::shared_edge, FacePetrieRule::shared_vertex, FacePetrieRule::always}) {
        auto sys = hemidodecahedron_petrie(rule);
        auto r = correlation_group(sys);
        RecordProperty(to_string(rule), "aut=" + to_string(r.aut_order) + " aut_i=" + to_string(r.aut_i_order) +
                                            (is_geometry(sys) ? " geometry" : " not-geometry"));
        if (r.aut_i_order == 60 && r.aut_order == 120) {
            auto fp = PermGroup(sys.size(), r.correlation_generators).fingerprint(200);
            some_rule_matches = some_rule_matches || fp.center_order == 1;
        }
        EXPECT_EQ(parse_face_petrie_rule(to_string(rule)), rule);
    }
    EXPECT_TRUE(some_rule_matches);
    auto r = correlation_group(hemidodecahedron_petrie());
    EXPECT_EQ(r.aut_i_order, 60);
    EXPECT_EQ(r.aut_order, 120);
    EXPECT_EQ(PermGroup(37, r.correlation_generators).enumerate_elements(200).size(), 120U);
    EXPECT_THROW((void)parse_face_petrie_rule("sideways"), Error);
}

TEST(CrossRatioGeometry, CountsAtQ4) {
    const auto& geom = pg24_geometry();
    EXPECT_FALSE(geom.degenerate);
    EXPECT_EQ(geom.system.size(), 2562U);
    EXPECT_EQ(geom.subspace_count, 42U);
    EXPECT_EQ(geom.system.types(), (std::vector<std::string>{"0", "1", "Q(w)", "Q(w+1)"}));
    EXPECT_EQ(geom.system.elements_of_type(2).size(), 1260U);
    EXPECT_EQ(geom.system.elements_of_type(3).size(), 1260U);
    EXPECT_EQ(geom.quadruples.size(), 21U * 5 * 4 * 3 * 2);
    EXPECT_TRUE(validate(geom.system).ok());
    // each quadruple meets its four points, its line and every quadruple of the other type
    const ElementId q = 42;
    EXPECT_EQ(geom.system.neighbors(q).size(), 4U + 1U + 1260U);
    auto truncated = pgl_cross_ratio_geometry(3, make_field(2, 2), 1, true);
    EXPECT_EQ(truncated.system.types(), geom.system.types());
    EXPECT_EQ(truncated.system.incidences(), geom.system.incidences());
}

TEST(CrossRatioGeometry, DegenerateOverPrimeField) {
    auto geom = pgl_cross_ratio_geometry(3, make_field(2, 1));
    EXPECT_TRUE(geom.degenerate);
    EXPECT_EQ(geom.system.size(), 14U);
    EXPECT_EQ(geom.system.incidences(), projective_space(make_field(2, 1), 2).incidence_system().incidences());
    EXPECT_THROW((void)pgl_cross_ratio_geometry(2, make_field(2, 2)), Error);
}

TEST(CrossRatioGeometry, SubspaceTruncationIsTheProjectivePlane) {
    const auto& geom = pg24_geometry();
    auto trunc = truncation(geom.system, {"0", "1"}).system;
    EXPECT_EQ(trunc.incidences(), geom.space.incidence_system().incidences());
}

TEST(CrossRatioGeometry, PglGeneratorsExtend) {
    const auto& geom = pg24_geometry();
    std::vector<Permutation> extended;
    for (const auto& m : gl_generators(geom.space.field(), 3)) {
        auto f = geom.space.induced_permutation(geom.space.matrix_action(m));
        auto e = extend_truncation_correlation(geom, f);
        ASSERT_TRUE(e.map) << e.reason;
        for (ElementId x = 0; x < geom.system.size(); ++x) {
            ASSERT_EQ(geom.system.type_of(x), geom.system.type_of((*e.map)(x)));
        }
        extended.push_back(*e.map);
    }
    PermGroup g(geom.system.size(), extended);
    EXPECT_EQ(g.order(), 60480);
}

TEST(CrossRatioGeometry, FrobeniusExtensionSwapsQuadrupleTypes) {
    const auto& geom = pg24_geometry();
    auto frob = frobenius_point_map(geom.space);
    auto e = extend_truncation_correlation(geom, frob.map);
    ASSERT_TRUE(e.map) << e.reason;
    EXPECT_TRUE(is_correlation(geom.system, *e.map));
    const ElementId qw = geom.system.elements_of_type(2).front();
    const ElementId qw2 = geom.system.elements_of_type(3).front();
    EXPECT_EQ(geom.system.type_of((*e.map)(qw)), 3U);
    EXPECT_EQ(geom.system.type_of((*e.map)(qw2)), 2U);
    EXPECT_EQ(geom.system.type_of((*e.map)(0)), 0U);
}

TEST(CrossRatioGeometry, DualityDoesNotExtend) {
    const auto& geom = pg24_geometry();
    auto delta = duality_map(geom.space);
    auto e = extend_truncation_correlation(geom, delta);
    RecordProperty("duality_verdict", e.map ? "extends" : e.reason);
    // the duality sends points to lines, so a quadruple of points has no image among quadruples
    EXPECT_FALSE(e.map);
    EXPECT_NE(e.reason.find("non-point"), std::string::npos);
    EXPECT_THROW((void)extend_truncation_correlation(geom, Permutation::from_cycles(42, {{0, 1}})), Error);
    EXPECT_THROW((void)extend_truncation_correlation(geom, Permutation(10)), Error);
}

TEST(CrossRatioGeometry, RestrictionExtensionOrders) {
    const auto& geom = pg24_geometry();
    auto analysis = analyse_by_extension(geom);
    EXPECT_EQ(analysis.truncation.aut_i_order, 120960);
    EXPECT_EQ(analysis.truncation.aut_order, 241920);
    EXPECT_EQ(analysis.extended.aut_i_order, 60480);
    EXPECT_EQ(analysis.extended.aut_order, 120960);
    ASSERT_EQ(analysis.coset_attempts.size(), 1U);
    EXPECT_FALSE(analysis.coset_attempts.front().map);
    // the extended group acts on types as Frobenius does: fixes 0 and 1, swaps the quadruple types
    EXPECT_EQ(analysis.extended.type_action.orbits(), (std::vector<std::vector<Point>>{{0}, {1}, {2, 3}}));
    for (const auto& g : analysis.extended.correlation_generators) EXPECT_TRUE(is_correlation(geom.system, g));
}

TEST(CrossRatioGeometry, TwinQuadruplesGiveExtraTypePreservingCorrelations) {
    // ordered quadruples with the same point set and cross-ratio have identical neighbourhoods
    const auto& geom = pg24_geometry();
    std::map<std::pair<std::array<std::uint32_t, 4>, TypeIndex>, std::vector<ElementId>> classes;
    for (std::size_t k = 0; k < geom.quadruples.size(); ++k) {
        auto key = geom.quadruples[k];
        std::sort(key.begin(), key.end());
        const auto id = static_cast<ElementId>(geom.subspace_count + k);
        classes[{key, geom.system.type_of(id)}].push_back(id);
    }
    const auto& twins = std::find_if(classes.begin(), classes.end(), [](const auto& kv) {
                            return kv.second.size() >= 2;
                        })->second;
    ASSERT_GE(twins.size(), 2U);
    EXPECT_EQ(geom.system.neighbors(twins[0]), geom.system.neighbors(twins[1]));
    auto swap = Permutation::from_cycles(geom.system.size(), {{twins[0], twins[1]}});
    EXPECT_TRUE(is_correlation(geom.system, swap));
    auto analysis = analyse_by_extension(geom);
    PermGroup extended(geom.system.size(), analysis.extended.correlation_generators);
    EXPECT_FALSE(extended.contains(swap));
    // the swap fixes every subspace, so it is invisible to the truncation
    EXPECT_TRUE(restrict_to(swap, geom.subspace_count).is_identity());
}
