#include "swg/error.hpp"
#include "swg/grid.hpp"
#include "swg/mesh.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

using namespace swg;

namespace {

double closure_defect(const PolygonalMesh& m, const Cell& c)
{
    Point s;
    for (std::size_t k = 0; k < c.edges.size(); ++k) {
        s = s + m.edge(c.edges[k].edge).length * m.outward_normal(c, k);
    }
    return norm(s);
}

bool is_convex(const PolygonalMesh& m, const Cell& c)
{
    const std::size_t n = c.vertices.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Point a = m.vertex(c.vertices[k]).pos;
        const Point b = m.vertex(c.vertices[(k + 1) % n]).pos;
        const Point d = m.vertex(c.vertices[(k + 2) % n]).pos;
        if (cross(b - a, d - b) <= 0.0) {
            return false;
        }
    }
    return true;
}

const char* kUnitSquare = R"({"vertices": [[0,0],[1,0],[1,1],[0,1]], "cells": [[0,1,2,3]]})";

} // namespace

TEST(UniformMesh, CountsForTwoByTwo)
{
    const PolygonalMesh m = build_uniform_rect_mesh(2, unit_square());
    EXPECT_EQ(m.num_cells(), 4);
    EXPECT_EQ(m.num_edges(), 12);
    EXPECT_EQ(m.boundary_edges().size(), 8u);
    EXPECT_EQ(m.num_interior_edges(), 4);
    EXPECT_TRUE(validate_mesh(m).empty());
}

TEST(UniformMesh, SingleCellClosure)
{
    const PolygonalMesh m = build_uniform_rect_mesh(1, unit_square());
    ASSERT_EQ(m.num_cells(), 1);
    EXPECT_DOUBLE_EQ(m.cell(0).area, 1.0);
    EXPECT_EQ(closure_defect(m, m.cell(0)), 0.0);
}

TEST(UniformMesh, PiSquareGrid)
{
    const double pi = std::numbers::pi;
    const PolygonalMesh m = build_uniform_rect_mesh(32, {0, 0, pi, pi});
    EXPECT_EQ(m.num_edges(), 2112);
    for (const Cell& c : m.cells()) {
        EXPECT_NEAR(c.diameter, pi / 32, 1e-15);
    }
    EXPECT_NEAR(m.total_area(), pi * pi, 1e-12 * pi * pi);
}

TEST(UniformMesh, EdgesOrderedByMidpointYThenX)
{
    const PolygonalMesh m = build_uniform_rect_mesh(3, {0, 0, 2, 1});
    for (Index e = 1; e < m.num_edges(); ++e) {
        const Point a = m.edge(e - 1).midpoint;
        const Point b = m.edge(e).midpoint;
        EXPECT_TRUE(a.y < b.y || (a.y == b.y && a.x < b.x)) << "edge " << e;
    }
}

TEST(UniformMesh, MatchesGridIndexer)
{
    const Rect dom{-1, 2, 3, 4};
    const PolygonalMesh m = build_uniform_rect_mesh(5, dom);
    const auto g = match_uniform_grid(m);
    ASSERT_TRUE(g.has_value());
    EXPECT_EQ(g->n(), 5);
    for (int j = 0; j < 5; ++j) {
        for (int i = 0; i <= 5; ++i) {
            const Point mid = m.edge(g->vertical_edge(i, j)).midpoint;
            EXPECT_NEAR(mid.x, g->vertical_midpoint(i, j).x, 1e-14);
            EXPECT_NEAR(mid.y, g->vertical_midpoint(i, j).y, 1e-14);
        }
    }
    EXPECT_FALSE(match_uniform_grid(build_perturbed_quad_mesh(5, dom, 0.1, 3)).has_value());
}

TEST(UniformMesh, InteriorEdgesHaveOppositeSigns)
{
    const PolygonalMesh m = build_uniform_rect_mesh(4, unit_square());
    for (const Edge& e : m.edges()) {
        if (e.boundary) {
            EXPECT_EQ(e.cells[1], kNoIndex);
            continue;
        }
        int signs = 0;
        for (Index c : e.cells) {
            for (const CellEdge& ce : m.cell(c).edges) {
                if (ce.edge == e.id) {
                    signs += ce.sign;
                }
            }
        }
        EXPECT_EQ(signs, 0);
    }
}

TEST(UniformMesh, RejectsBadInput)
{
    EXPECT_THROW(build_uniform_rect_mesh(0, unit_square()), MeshError);
    EXPECT_THROW(build_uniform_rect_mesh(2, {0, 0, 0, 1}), MeshError);
}

TEST(PerturbedMesh, ZeroAmplitudeIsUniform)
{
    const PolygonalMesh a = build_uniform_rect_mesh(4, unit_square());
    const PolygonalMesh b = build_perturbed_quad_mesh(4, unit_square(), 0.0, 99);
    ASSERT_EQ(a.num_vertices(), b.num_vertices());
    for (Index v = 0; v < a.num_vertices(); ++v) {
        EXPECT_EQ(a.vertex(v).pos, b.vertex(v).pos);
    }
    for (Index e = 0; e < a.num_edges(); ++e) {
        EXPECT_EQ(a.edge(e).midpoint, b.edge(e).midpoint);
        EXPECT_EQ(a.edge(e).normal, b.edge(e).normal);
    }
}

TEST(PerturbedMesh, ConvexWithClosure)
{
    const PolygonalMesh m = build_perturbed_quad_mesh(4, unit_square(), 0.1, 7);
    ASSERT_EQ(m.num_cells(), 16);
    for (const Cell& c : m.cells()) {
        EXPECT_TRUE(is_convex(m, c)) << "cell " << c.id;
        EXPECT_LE(closure_defect(m, c), 1e-14);
    }
    EXPECT_NEAR(m.total_area(), 1.0, 1e-12);
}

TEST(PerturbedMesh, Deterministic)
{
    const PolygonalMesh a = build_perturbed_quad_mesh(6, unit_square(), 0.2, 11);
    const PolygonalMesh b = build_perturbed_quad_mesh(6, unit_square(), 0.2, 11);
    const PolygonalMesh c = build_perturbed_quad_mesh(6, unit_square(), 0.2, 12);
    bool differs = false;
    for (Index v = 0; v < a.num_vertices(); ++v) {
        EXPECT_EQ(a.vertex(v).pos, b.vertex(v).pos);
        differs = differs || !(a.vertex(v).pos == c.vertex(v).pos);
    }
    EXPECT_TRUE(differs);
}

TEST(PerturbedMesh, BoundaryVerticesFixed)
{
    const int n = 5;
    const PolygonalMesh u = build_uniform_rect_mesh(n, unit_square());
    const PolygonalMesh p = build_perturbed_quad_mesh(n, unit_square(), 0.25, 5);
    for (Index v = 0; v < u.num_vertices(); ++v) {
        const Point a = u.vertex(v).pos;
        const bool on_boundary = a.x == 0.0 || a.x == 1.0 || a.y == 0.0 || a.y == 1.0;
        if (on_boundary) {
            EXPECT_EQ(a, p.vertex(v).pos);
        } else {
            EXPECT_LE(std::abs(a.x - p.vertex(v).pos.x), 0.25 / n + 1e-15);
            EXPECT_LE(std::abs(a.y - p.vertex(v).pos.y), 0.25 / n + 1e-15);
        }
    }
}

TEST(PerturbedMesh, AmplitudeRange)
{
    EXPECT_THROW(build_perturbed_quad_mesh(4, unit_square(), 0.3, 1), MeshError);
    EXPECT_THROW(build_perturbed_quad_mesh(4, unit_square(), -0.1, 1), MeshError);
}

TEST(MeshFile, UnitSquare)
{
    const PolygonalMesh m = parse_mesh_json(kUnitSquare);
    EXPECT_EQ(m.num_cells(), 1);
    EXPECT_EQ(m.num_edges(), 4);
    EXPECT_DOUBLE_EQ(m.cell(0).area, 1.0);
}

TEST(MeshFile, HexagonLengthsAndArea)
{
    const double s = 1.7;
    std::string text = R"({"vertices": [)";
    char buf[96];
    for (int k = 0; k < 6; ++k) {
        const double t = k * std::numbers::pi / 3;
        std::snprintf(buf, sizeof buf, "%s[%.17g, %.17g]", k ? ", " : "", s * std::cos(t),
                      s * std::sin(t));
        text += buf;
    }
    text += R"(], "cells": [[0, 1, 2, 3, 4, 5]]})";
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "swg_test_hexagon.json";
    {
        std::ofstream(path) << text;
    }
    const PolygonalMesh m = load_mesh(path);
    std::filesystem::remove(path);
    for (const Edge& e : m.edges()) {
        EXPECT_NEAR(e.length, s, 1e-14);
    }
    EXPECT_NEAR(m.cell(0).area, 1.5 * std::sqrt(3.0) * s * s, 1e-13);
    EXPECT_TRUE(validate_mesh(m).empty());
}

TEST(MeshFile, OpenLoopNamesCell)
{
    const char* text = R"({"vertices": [[0,0],[1,0],[1,1],[0,1],[2,0]],
                           "cells": [[0,1,2,3],[1,4]]})";
    try {
        parse_mesh_json(text);
        FAIL() << "expected MeshError";
    } catch (const MeshError& e) {
        EXPECT_NE(std::string(e.what()).find("cell 1"), std::string::npos) << e.what();
    }
}

TEST(MeshFile, ClockwiseLoopRejected)
{
    EXPECT_THROW(parse_mesh_json(R"({"vertices": [[0,0],[1,0],[1,1],[0,1]], "cells": [[0,3,2,1]]})"),
                 MeshError);
}

TEST(MeshFile, DanglingEdgeRejected)
{
    // three triangles share edge 0-1
    const char* text = R"({"vertices": [[0,0],[1,0],[0.5,1],[0.5,-1],[0.5,2]],
                           "cells": [[0,1,2],[1,0,3],[0,1,4]]})";
    EXPECT_THROW(parse_mesh_json(text), MeshError);
}

TEST(MeshFile, MalformedJson)
{
    EXPECT_THROW(parse_mesh_json("{\"vertices\": [[0,0]"), ParseError);
    EXPECT_THROW(parse_mesh_json("[1,2,3]"), ParseError);
    EXPECT_THROW(parse_mesh_json(R"({"vertices": [[0,0,1]], "cells": [[0]]})"), ParseError);
    EXPECT_THROW(load_mesh("/nonexistent/mesh.json"), ParseError);
}

TEST(Validate, FlippedNormalReported)
{
    const PolygonalMesh m = build_uniform_rect_mesh(4, unit_square());
    EXPECT_TRUE(validate_mesh(m).empty());
    std::vector<Vertex> vs = m.vertices();
    std::vector<Edge> es = m.edges();
    std::vector<Cell> cs = m.cells();
    const Index e = m.boundary_edges().front();
    es[static_cast<std::size_t>(e)].normal = -1.0 * es[static_cast<std::size_t>(e)].normal;
    const PolygonalMesh bad(vs, es, cs);
    const auto diags = validate_mesh(bad);
    ASSERT_FALSE(diags.empty());
    bool found = false;
    for (const Diagnostic& d : diags) {
        if (d.kind == Diagnostic::Kind::Cell && d.id == m.edge(e).cells[0] &&
            d.message.find("closure violated") != std::string::npos) {
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(SplitMix, ReferenceSequence)
{
    SplitMix64 r(0);
    EXPECT_EQ(r.next(), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(r.next(), 0x6E789E6AA1B965F4ULL);
    SplitMix64 u(42);
    for (int k = 0; k < 1000; ++k) {
        const double x = u.symmetric();
        EXPECT_GE(x, -1.0);
        EXPECT_LT(x, 1.0);
    }
}
