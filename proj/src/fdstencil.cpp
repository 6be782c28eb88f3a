#include "swg/fdstencil.hpp"

#include "swg/error.hpp"

#include <algorithm>
#include <cmath>

namespace swg {

StencilWeights stencil_weights(double kappa)
{
    if (!(kappa > 0.0)) {
        throw Error("stencil weights: kappa must be positive");
    }
    const double side = kappa / 4.0 - 1.0;
    return {side, kappa / 2.0 + 2.0, side, -kappa / 4.0};
}

namespace {

DofMap grid_dofs(const GridIndexer& g)
{
    const int n = g.n();
    DofMap map;
    map.edge_dof.assign(static_cast<std::size_t>(g.num_edges()), kNoIndex);
    std::vector<bool> boundary(static_cast<std::size_t>(g.num_edges()), false);
    for (int k = 0; k < n; ++k) {
        boundary[static_cast<std::size_t>(g.vertical_edge(0, k))] = true;
        boundary[static_cast<std::size_t>(g.vertical_edge(n, k))] = true;
        boundary[static_cast<std::size_t>(g.horizontal_edge(k, 0))] = true;
        boundary[static_cast<std::size_t>(g.horizontal_edge(k, n))] = true;
    }
    Index next = 0;
    for (std::size_t e = 0; e < boundary.size(); ++e) {
        if (!boundary[e]) {
            map.edge_dof[e] = next++;
        }
    }
    map.n_interior_edges = next;
    map.n_cells = g.num_cells();
    return map;
}

// Accumulates one equation row; references to boundary edges go to the rhs.
struct RowWriter {
    TripletBuilder& triplets;
    std::vector<double>& rhs;
    const DofMap& dofs;
    const BoundaryData& bc;

    // component 0 = u, 1 = v
    void velocity(std::size_t row, Index edge, int component, double w)
    {
        const Index dof = component == 0 ? dofs.u_dof(edge) : dofs.v_dof(edge);
        if (dof == kNoIndex) {
            const Vec2 g = bc.values[static_cast<std::size_t>(edge)];
            rhs[row] -= w * (component == 0 ? g.x : g.y);
        } else {
            triplets.add(row, static_cast<std::size_t>(dof), w);
        }
    }

    void pressure(std::size_t row, Index cell, double w)
    {
        triplets.add(row, static_cast<std::size_t>(dofs.p_dof(cell)), w);
    }
};

} // namespace

SaddleSystem build_fd_system(const GridIndexer& grid, double kappa, const VectorField& f,
                             const BoundaryData& bc)
{
    const double h = grid.hx();
    if (std::abs(grid.hx() - grid.hy()) > 1e-14 * std::max(grid.hx(), grid.hy())) {
        throw ModeError("fd system: grid cells must be square");
    }
    if (bc.values.size() != static_cast<std::size_t>(grid.num_edges())) {
        throw CompatibilityError("fd system: boundary data does not cover every edge");
    }
    const StencilWeights c = stencil_weights(kappa);
    const int n = grid.n();

    SaddleSystem sys;
    sys.dofs = grid_dofs(grid);
    const auto dim = static_cast<std::size_t>(sys.dofs.size());
    sys.rhs.assign(dim, 0.0);
    sys.pressure_weights.assign(dim, 0.0);
    TripletBuilder triplets(dim, dim);
    RowWriter w{triplets, sys.rhs, sys.dofs, bc};
    const double load = h * h / 2.0;

    // Both components live on every interior edge. The stencil is the same
    // for both; pressure enters only the normal component (u on vertical
    // edges, v on horizontal edges).
    for (int comp = 0; comp < 2; ++comp) {
        // vertical edges
        for (int j = 0; j < n; ++j) {
            for (int i = 1; i < n; ++i) {
                const Index e = grid.vertical_edge(i, j);
                const auto row = static_cast<std::size_t>(comp == 0 ? sys.dofs.u_dof(e)
                                                                    : sys.dofs.v_dof(e));
                w.velocity(row, e, comp, c.c2);
                w.velocity(row, grid.vertical_edge(i - 1, j), comp, c.c1);
                w.velocity(row, grid.vertical_edge(i + 1, j), comp, c.c3);
                w.velocity(row, grid.horizontal_edge(i - 1, j), comp, c.c4);
                w.velocity(row, grid.horizontal_edge(i - 1, j + 1), comp, c.c4);
                w.velocity(row, grid.horizontal_edge(i, j), comp, c.c4);
                w.velocity(row, grid.horizontal_edge(i, j + 1), comp, c.c4);
                const Vec2 fm = f(grid.vertical_midpoint(i, j));
                sys.rhs[row] += load * (comp == 0 ? fm.x : fm.y);
                if (comp == 0) {
                    w.pressure(row, grid.cell(i - 1, j), h);
                    w.pressure(row, grid.cell(i, j), -h);
                }
            }
        }
        // horizontal edges
        for (int j = 1; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                const Index e = grid.horizontal_edge(i, j);
                const auto row = static_cast<std::size_t>(comp == 0 ? sys.dofs.u_dof(e)
                                                                    : sys.dofs.v_dof(e));
                w.velocity(row, e, comp, c.c2);
                w.velocity(row, grid.horizontal_edge(i, j - 1), comp, c.c1);
                w.velocity(row, grid.horizontal_edge(i, j + 1), comp, c.c3);
                w.velocity(row, grid.vertical_edge(i, j - 1), comp, c.c4);
                w.velocity(row, grid.vertical_edge(i + 1, j - 1), comp, c.c4);
                w.velocity(row, grid.vertical_edge(i, j), comp, c.c4);
                w.velocity(row, grid.vertical_edge(i + 1, j), comp, c.c4);
                const Vec2 fm = f(grid.horizontal_midpoint(i, j));
                sys.rhs[row] += load * (comp == 0 ? fm.x : fm.y);
                if (comp == 1) {
                    w.pressure(row, grid.cell(i, j - 1), h);
                    w.pressure(row, grid.cell(i, j), -h);
                }
            }
        }
    }
    // continuity rows
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Index cell = grid.cell(i, j);
            const auto row = static_cast<std::size_t>(sys.dofs.p_dof(cell));
            w.velocity(row, grid.vertical_edge(i + 1, j), 0, h);
            w.velocity(row, grid.vertical_edge(i, j), 0, -h);
            w.velocity(row, grid.horizontal_edge(i, j + 1), 1, h);
            w.velocity(row, grid.horizontal_edge(i, j), 1, -h);
            sys.pressure_weights[row] = h * h;
        }
    }
    sys.matrix = triplets.build();
    return sys;
}

EquivalenceReport check_equivalence(const SaddleSystem& swg, const SaddleSystem& fd)
{
    if (swg.size() != fd.size() || swg.matrix.rows() != fd.matrix.rows()) {
        throw SolverError("equivalence check: system dimensions differ");
    }
    EquivalenceReport r;
    r.matrix = max_abs_difference(swg.matrix, fd.matrix);
    for (std::size_t i = 0; i < swg.rhs.size(); ++i) {
        r.rhs = std::max(r.rhs, std::abs(swg.rhs[i] - fd.rhs[i]));
    }
    return r;
}

} // namespace swg
