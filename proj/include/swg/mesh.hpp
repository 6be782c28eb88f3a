#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swg {

using Index = int;
inline constexpr Index kNoIndex = -1;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }

/// Axis-aligned rectangle [x0,x1] x [y0,y1].
struct Rect {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 1.0;
    double y1 = 1.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
};

inline Rect unit_square() { return {0.0, 0.0, 1.0, 1.0}; }

struct Vertex {
    Index id = kNoIndex;
    Point pos;
};

/// A straight mesh edge. The normal is stored once, oriented outward with
/// respect to cells[0]; cells[1] sees its negation (see CellEdge::sign).
struct Edge {
    Index id = kNoIndex;
    std::array<Index, 2> vertices{kNoIndex, kNoIndex};
    Point midpoint;
    double length = 0.0;
    Point normal;
    bool boundary = false;
    std::array<Index, 2> cells{kNoIndex, kNoIndex};
};

/// One entry of a cell's counterclockwise edge loop.
struct CellEdge {
    Index edge = kNoIndex;
    int sign = 1; ///< +1 if Edge::normal points out of this cell, -1 otherwise
};

struct Cell {
    Index id = kNoIndex;
    std::vector<Index> vertices; ///< counterclockwise loop
    std::vector<CellEdge> edges; ///< edges[k] joins vertices[k] and vertices[k+1]
    double area = 0.0;
    Point centroid;
    double diameter = 0.0; ///< max edge length
};

/// General polygonal mesh. Immutable once built; all derived geometry is
/// computed from vertex coordinates at construction.
class PolygonalMesh {
public:
    PolygonalMesh() = default;

    /// Wraps already-derived data without any checking. Used for tests that
    /// need deliberately broken meshes; everything else goes through
    /// from_polygons().
    PolygonalMesh(std::vector<Vertex> vertices, std::vector<Edge> edges,
                  std::vector<Cell> cells);

    /// Builds edges, normals, areas and centroids from counterclockwise
    /// vertex loops. Edges are numbered by midpoint, y-major then x.
    /// Throws MeshError naming the offending cell on invalid input.
    static PolygonalMesh from_polygons(std::span<const Point> vertices,
                                       const std::vector<std::vector<Index>>& cells);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Cell>& cells() const { return cells_; }
    const std::vector<Index>& boundary_edges() const { return boundary_edges_; }

    const Vertex& vertex(Index i) const { return vertices_[static_cast<std::size_t>(i)]; }
    const Edge& edge(Index i) const { return edges_[static_cast<std::size_t>(i)]; }
    const Cell& cell(Index i) const { return cells_[static_cast<std::size_t>(i)]; }

    Index num_vertices() const { return static_cast<Index>(vertices_.size()); }
    Index num_edges() const { return static_cast<Index>(edges_.size()); }
    Index num_cells() const { return static_cast<Index>(cells_.size()); }
    Index num_interior_edges() const { return num_edges() - static_cast<Index>(boundary_edges_.size()); }

    /// Outward unit normal of edge k of the given cell.
    Point outward_normal(const Cell& c, std::size_t k) const
    {
        const CellEdge& ce = c.edges[k];
        return static_cast<double>(ce.sign) * edge(ce.edge).normal;
    }

    double total_area() const;

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<Cell> cells_;
    std::vector<Index> boundary_edges_;
};

/// n x n congruent rectangles covering the domain.
PolygonalMesh build_uniform_rect_mesh(int n, const Rect& domain);

/// Uniform mesh with interior vertices displaced by
/// amplitude * (hx*r1, hy*r2), r1,r2 drawn from SplitMix64 in [-1,1].
/// Throws MeshError if a cell becomes non-convex.
PolygonalMesh build_perturbed_quad_mesh(int n, const Rect& domain, double amplitude,
                                        std::uint64_t seed);

/// JSON mesh: {"vertices": [[x,y],...], "cells": [[v0,v1,...],...]}.
PolygonalMesh parse_mesh_json(std::string_view text);
PolygonalMesh load_mesh(const std::filesystem::path& path);

struct Diagnostic {
    enum class Kind { Vertex, Edge, Cell };
    Kind kind = Kind::Cell;
    Index id = kNoIndex;
    std::string message;
};

/// Checks every type invariant; returns an empty list for a sound mesh.
std::vector<Diagnostic> validate_mesh(const PolygonalMesh& mesh);

std::string to_string(const Diagnostic& d);

/// SplitMix64 (Steele, Lea & Flood 2014). Fixed constants, so meshes built
/// from a seed are reproducible on any platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0,1) from the top 53 bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [-1,1).
    double symmetric() { return 2.0 * uniform() - 1.0; }

private:
    std::uint64_t state_;
};

} // namespace swg
