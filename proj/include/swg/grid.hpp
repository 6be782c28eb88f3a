#pragma once

#include "swg/mesh.hpp"

#include <optional>

namespace swg {

/// Index arithmetic for the mesh produced by build_uniform_rect_mesh().
///
/// With zero-based indices, cell (i,j) covers
/// [x0+i*hx, x0+(i+1)*hx] x [y0+j*hy, y0+(j+1)*hy]. Vertical edge (i,j),
/// 0<=i<=n, 0<=j<n, sits at x = x0+i*hx; horizontal edge (i,j), 0<=i<n,
/// 0<=j<=n, sits at y = y0+j*hy. Edge ids follow the mesh's y-major midpoint
/// ordering: row k of horizontal edges starts at k*(2n+1), row j of vertical
/// edges at j*(2n+1)+n.
class GridIndexer {
public:
    GridIndexer(int n, const Rect& domain);

    int n() const { return n_; }
    const Rect& domain() const { return domain_; }
    double hx() const { return domain_.width() / n_; }
    double hy() const { return domain_.height() / n_; }

    Index vertical_edge(int i, int j) const { return j * (2 * n_ + 1) + n_ + i; }
    Index horizontal_edge(int i, int j) const { return j * (2 * n_ + 1) + i; }
    Index cell(int i, int j) const { return j * n_ + i; }

    Index num_edges() const { return 2 * n_ * (n_ + 1); }
    Index num_cells() const { return n_ * n_; }

    Point cell_center(int i, int j) const;
    Point vertical_midpoint(int i, int j) const;
    Point horizontal_midpoint(int i, int j) const;

private:
    int n_;
    Rect domain_;
};

/// Returns the indexer if the mesh is (up to 1e-12 relative geometry
/// tolerance) the uniform n x n rectangular mesh of its bounding box with
/// the standard numbering.
std::optional<GridIndexer> match_uniform_grid(const PolygonalMesh& mesh);

} // namespace swg
