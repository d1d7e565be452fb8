#include <gtest/gtest.h>

#include <random>

#include "geomrep/constructions.hpp"
#include "geomrep/interchange.hpp"
#include "support.hpp"

using namespace geomrep;
using testsupport::triangle;

namespace {

IncidenceSystem two_triangles() {
    IncidenceBuilder b({"vertex", "edge"});
    for (int i = 0; i < 6; ++i) b.add_element(0);
    for (int i = 0; i < 6; ++i) b.add_element(1);
    for (ElementId base : {0U, 3U}) {
        for (ElementId k = 0; k < 3; ++k) {
            const ElementId edge = 6 + base + k;
            b.add_incidence(base + k, edge);
            b.add_incidence(base + (k + 1) % 3, edge);
        }
    }
    return b.build();
}

} // namespace

TEST(Validate, TriangleIsWellFormed) { EXPECT_TRUE(validate(triangle()).ok()); }

TEST(Validate, ReportsSameTypeIncidence) {
    IncidenceBuilder b({"0", "1"});
    b.add_element(0);
    b.add_element(0);
    b.add_element(1);
    b.add_incidence(0, 1);
    auto report = validate(b.build());
    ASSERT_EQ(report.violations.size(), 1U);
    EXPECT_EQ(report.violations[0], (Violation{"same-type incidence", {0, 1}}));
}

TEST(Validate, ReportsEmptyFiberAndDanglingIds) {
    auto sys = IncidenceSystem({"a", "b"}, {0, 0}, {{0, 5}, {1, 1}});
    auto report = validate(sys);
    std::set<std::string> rules;
    for (const auto& v : report.violations) rules.insert(v.rule);
    EXPECT_TRUE(rules.count("dangling id"));
    EXPECT_TRUE(rules.count("self incidence"));
    EXPECT_TRUE(rules.count("empty type fiber"));
}

TEST(Validate, GeneratedSystemsAreValid) {
    for (std::size_t n = 3; n <= 12; ++n) EXPECT_TRUE(validate(dihedral_geometry(n)).ok()) << n;
    EXPECT_TRUE(validate(gq22()).ok());
    EXPECT_TRUE(validate(cube_geometry()).ok());
    EXPECT_TRUE(validate(cube_geometry(false)).ok());
    for (auto rule : {FacePetrieRule::shared_edge, FacePetrieRule::shared_vertex, FacePetrieRule::always}) {
        EXPECT_TRUE(validate(hemidodecahedron_petrie(rule)).ok());
    }
    EXPECT_TRUE(validate(complete_graph_geometry(5)).ok());
}

TEST(ExtendFlag, TriangleVertexTakesLowestEdge) {
    auto chamber = extend_flag_to_chamber(triangle(), {1});
    ASSERT_TRUE(chamber);
    EXPECT_EQ(*chamber, (Flag{1, 3}));
}

TEST(ExtendFlag, RejectsNonFlag) { EXPECT_THROW((void)extend_flag_to_chamber(triangle(), {0, 1}), Error); }

TEST(ExtendFlag, NoneWhenTypesNeverMeet) {
    IncidenceBuilder b({"0", "1", "2", "3"});
    for (TypeIndex t = 0; t < 4; ++t) b.add_element(t);
    b.add_incidence(0, 1);
    b.add_incidence(0, 2);
    b.add_incidence(0, 3);
    b.add_incidence(1, 2);
    b.add_incidence(1, 3);
    EXPECT_FALSE(extend_flag_to_chamber(b.build(), {2}));
}

TEST(ExtendFlag, CubeEdgeFlag) {
    auto cube = cube_geometry();
    // a P1 vertex and an adjacent P2 vertex
    ElementId u = cube.elements_of_type(0).front();
    ElementId w = cube.neighbors(u).front();
    ASSERT_EQ(cube.type_of(w), 1U);
    auto chamber = extend_flag_to_chamber(cube, {u, w});
    ASSERT_TRUE(chamber);
    EXPECT_EQ(chamber->size(), 4U);
    EXPECT_TRUE(is_flag(cube, *chamber));
    bool found = false;
    for (const auto& c : testsupport::chambers_naive(cube)) {
        found = found || (std::count(c.begin(), c.end(), u) && std::count(c.begin(), c.end(), w));
    }
    EXPECT_TRUE(found);
}

TEST(ExtendFlag, AgreesWithExhaustiveSearch) {
    std::mt19937 rng(testsupport::kSeed);
    for (int trial = 0; trial < 60; ++trial) {
        auto sys = testsupport::random_system(rng, 2 + rng() % 3, 6 + rng() % 12, 0.5);
        auto chambers = testsupport::chambers_naive(sys);
        for (const auto& f : testsupport::all_flags_naive(sys)) {
            bool exists = false;
            for (const auto& c : chambers) exists = exists || std::includes(c.begin(), c.end(), f.begin(), f.end());
            auto got = extend_flag_to_chamber(sys, f);
            ASSERT_EQ(got.has_value(), exists);
            if (got) {
                EXPECT_EQ(got->size(), sys.rank());
                EXPECT_TRUE(std::includes(got->begin(), got->end(), f.begin(), f.end()));
            }
        }
    }
}

TEST(IsGeometry, Examples) {
    EXPECT_TRUE(is_geometry(triangle()));
    EXPECT_TRUE(is_geometry(complete_graph_geometry(4)));
    EXPECT_TRUE(is_geometry(gq22()));
}

TEST(IsGeometry, AgreesWithNaiveMaximalFlags) {
    std::mt19937 rng(testsupport::kSeed + 1);
    int geometries = 0;
    for (int trial = 0; trial < 150; ++trial) {
        auto sys = testsupport::random_system(rng, 2 + rng() % 3, 5 + rng() % 20, 0.4 + 0.1 * (trial % 5));
        EXPECT_EQ(maximal_flags(sys), testsupport::maximal_flags_naive(sys));
        const bool expected = testsupport::is_geometry_naive(sys);
        EXPECT_EQ(is_geometry(sys), expected);
        geometries += expected ? 1 : 0;
    }
    EXPECT_GT(geometries, 0);
}

TEST(IsFirm, Examples) {
    EXPECT_TRUE(is_firm(triangle()));
    IncidenceBuilder path({"vertex", "edge"});
    path.add_element(0);
    path.add_element(0);
    path.add_element(1);
    path.add_incidence(0, 2);
    path.add_incidence(1, 2);
    EXPECT_FALSE(is_firm(path.build()));
    EXPECT_TRUE(is_firm(gq22()));
}

TEST(IsGeometry, DihedralEdgeClassesGiveNonExtendableFlags) {
    // cross-class edges are always incident, so {0,1} and {2,4} form a flag with no common vertex
    auto sys = dihedral_geometry(5);
    EXPECT_TRUE(is_flag(sys, {5, 12}));
    EXPECT_FALSE(extend_flag_to_chamber(sys, {5, 12}).has_value());
    EXPECT_FALSE(is_geometry(sys));
    EXPECT_TRUE(is_geometry(dihedral_geometry(3)));
}

TEST(IsFirm, AgreesWithChamberCounts) {
    std::mt19937 rng(testsupport::kSeed + 2);
    for (int trial = 0; trial < 80; ++trial) {
        auto sys = testsupport::random_system(rng, 2 + rng() % 2, 6 + rng() % 10, 0.7);
        if (!testsupport::is_geometry_naive(sys)) continue;
        auto chambers = testsupport::chambers_naive(sys);
        bool firm = true;
        for (const auto& f : testsupport::all_flags_naive(sys)) {
            if (f.size() == sys.rank()) continue;
            std::size_t count = 0;
            for (const auto& c : chambers) count += std::includes(c.begin(), c.end(), f.begin(), f.end()) ? 1 : 0;
            firm = firm && count >= 2;
        }
        EXPECT_EQ(is_firm(sys), firm);
    }
}

TEST(Residue, CubeVertexResidueIsATriangle) {
    // rank-3 cube: vertices, edges, faces
    auto full = cube_geometry();
    auto rank3 = truncation(full, {"3", "4"}).system;
    ASSERT_EQ(rank3.rank(), 2U);
    // rebuild with vertices as one type
    IncidenceBuilder b({"v", "e", "f"});
    std::vector<ElementId> id(full.size());
    for (ElementId e = 0; e < full.size(); ++e) {
        auto t = full.type_of(e);
        id[e] = b.add_element(t <= 1 ? 0 : t - 1);
    }
    for (auto [x, y] : full.incidences()) {
        if (full.type_of(x) <= 1 && full.type_of(y) <= 1) continue;
        b.add_incidence(id[x], id[y]);
    }
    auto cube3 = b.build();
    ASSERT_TRUE(validate(cube3).ok());
    auto res = residue(cube3, {0}).system;
    EXPECT_EQ(res.rank(), 2U);
    EXPECT_EQ(res.elements_of_type(0).size(), 3U);
    EXPECT_EQ(res.elements_of_type(1).size(), 3U);
    EXPECT_EQ(res.incidence_count(), 6U);
    EXPECT_EQ(incidence_graph(res).girth(), 6U);
    EXPECT_TRUE(incidence_graph(res).is_connected());
}

TEST(Residue, EmptyFlagAndChamber) {
    auto gq = gq22();
    auto whole = residue(gq, {});
    EXPECT_EQ(whole.system.size(), gq.size());
    EXPECT_EQ(whole.system.incidences(), gq.incidences());
    auto chamber = *extend_flag_to_chamber(gq, {0});
    auto empty = residue(gq, chamber);
    EXPECT_EQ(empty.system.rank(), 0U);
    EXPECT_EQ(empty.system.size(), 0U);
    EXPECT_THROW((void)residue(gq, {0, 1}), Error);
}

TEST(Residue, RankDropsByFlagSize) {
    for (auto sys : {dihedral_geometry(3), gq22(), cube_geometry(), hemidodecahedron_petrie()}) {
        ASSERT_TRUE(is_geometry(sys));
        for_each_flag(sys, [&](const Flag& f) {
            EXPECT_EQ(residue(sys, f).system.rank(), sys.rank() - f.size());
            return true;
        });
    }
}

TEST(Truncation, Examples) {
    auto d10 = dihedral_geometry(5);
    auto t = truncation(d10, {"0"});
    EXPECT_EQ(t.system.size(), 5U);
    EXPECT_EQ(t.system.incidence_count(), 0U);
    EXPECT_THROW((void)truncation(d10, {"7"}), Error);
    EXPECT_THROW((void)truncation(d10, {}), Error);
}

TEST(Truncation, ComposesWithIdMaps) {
    std::mt19937 rng(testsupport::kSeed + 3);
    for (int trial = 0; trial < 40; ++trial) {
        auto sys = testsupport::random_system(rng, 4, 12 + rng() % 10, 0.5);
        std::vector<std::string> j{"t0", "t1", "t3"};
        std::vector<std::string> jj{"t3", "t0"};
        auto outer = truncation(sys, j);
        auto inner = truncation(outer.system, jj);
        auto direct = truncation(sys, jj);
        ASSERT_EQ(inner.system.size(), direct.system.size());
        EXPECT_EQ(inner.system.types(), direct.system.types());
        for (ElementId e = 0; e < inner.system.size(); ++e) {
            EXPECT_EQ(outer.origin[inner.origin[e]], direct.origin[e]);
            EXPECT_EQ(inner.system.type_of(e), direct.system.type_of(e));
        }
        EXPECT_EQ(inner.system.incidences(), direct.system.incidences());
    }
}

TEST(ResidualConnectedness, Examples) {
    EXPECT_TRUE(is_residually_connected(triangle()));
    EXPECT_FALSE(is_residually_connected(two_triangles()));
}

TEST(ResidualConnectedness, AgreesWithResidueComponentCounts) {
    std::mt19937 rng(testsupport::kSeed + 4);
    for (int trial = 0; trial < 80; ++trial) {
        auto sys = testsupport::random_system(rng, 2 + rng() % 2, 6 + rng() % 10, 0.35);
        bool rc = true;
        for (const auto& f : testsupport::all_flags_naive(sys)) {
            if (sys.rank() - f.size() < 2) continue;
            auto res = residue(sys, f).system;
            rc = rc && testsupport::component_count(res) == 1;
        }
        EXPECT_EQ(is_residually_connected(sys), rc);
    }
}

TEST(IncidenceGraph, Examples) {
    auto g = incidence_graph(gq22());
    EXPECT_EQ(g.size(), 30U);
    EXPECT_EQ(g.girth(), 8U);
    auto k3 = incidence_graph(complete_graph_geometry(3));
    EXPECT_EQ(k3.size(), 6U);
    EXPECT_EQ(k3.edge_count(), 6U);
    EXPECT_EQ(k3.girth(), 6U);
    EXPECT_TRUE(k3.is_connected());
    auto d10 = dihedral_geometry(5);
    EXPECT_EQ(incidence_graph(d10).size(), 15U);
    EXPECT_EQ(d10.rank(), 3U);
}

TEST(Interchange, RoundTripAndOrdering) {
    auto sys = dihedral_geometry(6);
    auto j = to_json(sys);
    auto back = system_from_json(j);
    EXPECT_EQ(back.types(), sys.types());
    EXPECT_EQ(back.element_types(), sys.element_types());
    EXPECT_EQ(back.incidences(), sys.incidences());
    auto pairs = j.at("incidences");
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        EXPECT_LT(pairs[k][0].get<int>(), pairs[k][1].get<int>());
        if (k > 0) EXPECT_LT(pairs[k - 1], pairs[k]);
    }
    EXPECT_EQ(j.dump(), to_json(back).dump());
}

TEST(Interchange, MalformedInput) {
    EXPECT_THROW((void)system_from_string("{"), Error);
    EXPECT_THROW((void)system_from_string(R"({"types":["a"],"elements":[{"id":1,"type":"a"}],"incidences":[]})"),
                 Error);
    EXPECT_THROW((void)system_from_string(R"({"types":["a"],"elements":[{"id":0,"type":"b"}],"incidences":[]})"),
                 Error);
}

TEST(Interchange, DotLabels) {
    auto dot = to_dot(triangle());
    EXPECT_NE(dot.find("0 [label=\"0:vertex\"]"), std::string::npos);
    EXPECT_NE(dot.find("0 -- 3;"), std::string::npos);
}
