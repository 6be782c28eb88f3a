#include "swg/grid.hpp"

#include "swg/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swg {

GridIndexer::GridIndexer(int n, const Rect& domain) : n_(n), domain_(domain)
{
    if (n < 1) {
        throw MeshError("grid indexer: n must be >= 1");
    }
}

Point GridIndexer::cell_center(int i, int j) const
{
    return {domain_.x0 + (i + 0.5) * hx(), domain_.y0 + (j + 0.5) * hy()};
}

Point GridIndexer::vertical_midpoint(int i, int j) const
{
    return {domain_.x0 + i * hx(), domain_.y0 + (j + 0.5) * hy()};
}

Point GridIndexer::horizontal_midpoint(int i, int j) const
{
    return {domain_.x0 + (i + 0.5) * hx(), domain_.y0 + j * hy()};
}

std::optional<GridIndexer> match_uniform_grid(const PolygonalMesh& mesh)
{
    const Index nc = mesh.num_cells();
    if (nc < 1) {
        return std::nullopt;
    }
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(nc))));
    if (n * n != nc || mesh.num_edges() != 2 * n * (n + 1)) {
        return std::nullopt;
    }
    Rect box{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Vertex& v : mesh.vertices()) {
        box.x0 = std::min(box.x0, v.pos.x);
        box.y0 = std::min(box.y0, v.pos.y);
        box.x1 = std::max(box.x1, v.pos.x);
        box.y1 = std::max(box.y1, v.pos.y);
    }
    const GridIndexer grid(n, box);
    const double tol = 1e-12 * std::max(box.width(), box.height());
    auto near = [tol](Point a, Point b) { return norm(a - b) <= tol; };

    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Cell& c = mesh.cell(grid.cell(i, j));
            if (c.edges.size() != 4 || !near(c.centroid, grid.cell_center(i, j)) ||
                std::abs(c.area - grid.hx() * grid.hy()) > 1e-12 * c.area) {
                return std::nullopt;
            }
        }
    }
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i <= n; ++i) {
            if (!near(mesh.edge(grid.vertical_edge(i, j)).midpoint, grid.vertical_midpoint(i, j))) {
                return std::nullopt;
            }
        }
    }
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (!near(mesh.edge(grid.horizontal_edge(i, j)).midpoint,
                      grid.horizontal_midpoint(i, j))) {
                return std::nullopt;
            }
        }
    }
    return grid;
}

} // namespace swg
