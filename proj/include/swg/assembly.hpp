#pragma once

#include "swg/element.hpp"
#include "swg/mesh.hpp"
#include "swg/sparse.hpp"

#include <functional>
#include <span>
#include <vector>

namespace swg {

using Vec2 = Point;
using VectorField = std::function<Vec2(Point)>;

/// Global numbering: u-dofs for interior edges in edge order, then the
/// matching v-dofs, then one pressure dof per cell.
struct DofMap {
    std::vector<Index> edge_dof; ///< u-dof per edge, kNoIndex on boundary edges
    Index n_interior_edges = 0;
    Index n_cells = 0;

    Index u_dof(Index edge) const { return edge_dof[static_cast<std::size_t>(edge)]; }
    Index v_dof(Index edge) const
    {
        const Index u = u_dof(edge);
        return u == kNoIndex ? kNoIndex : u + n_interior_edges;
    }
    Index p_dof(Index cell) const { return 2 * n_interior_edges + cell; }

    Index num_velocity() const { return 2 * n_interior_edges; }
    Index num_pressure() const { return n_cells; }
    Index size() const { return num_velocity() + num_pressure(); }

    friend bool operator==(const DofMap&, const DofMap&) = default;
};

DofMap number_dofs(const PolygonalMesh& mesh);

/// Prescribed velocity per edge, evaluated at the edge midpoint. Only the
/// boundary entries are read.
struct BoundaryData {
    std::vector<Vec2> values;

    static BoundaryData homogeneous(const PolygonalMesh& mesh);
    static BoundaryData from_function(const PolygonalMesh& mesh, const VectorField& g);

    /// sum over boundary edges of (g . n)|e| with n the outward normal.
    double net_flux(const PolygonalMesh& mesh) const;
};

/// Symmetric indefinite system
///
///     [ K  0  Q1 ] [u]   [F1]
///     [ 0  K  Q2 ] [v] = [F2]
///     [ Q1t Q2t 0] [q]   [G ]
///
/// with Dirichlet dofs eliminated. The pressure block of the unknown holds
/// q = -p_h, which keeps +Q in both off-diagonal blocks; lift_solution()
/// undoes the sign.
struct SaddleSystem {
    CsrMatrix matrix;
    std::vector<double> rhs;
    DofMap dofs;
    /// |T| on pressure dofs, 0 on velocity dofs. Its support is the
    /// constant-pressure null space.
    std::vector<double> pressure_weights;

    std::size_t size() const { return rhs.size(); }
};

/// Assembles the SWG system. `cell_order` optionally changes the order in
/// which cells are visited (the result must not depend on it).
SaddleSystem assemble(const PolygonalMesh& mesh, double kappa, const VectorField& f,
                      const BoundaryData& bc, LoadRule rule,
                      std::span<const Index> cell_order = {});

/// Velocity trace per edge (both components) and pressure per cell.
struct Solution {
    std::vector<double> u;
    std::vector<double> v;
    std::vector<double> p;
};

/// Re-inserts boundary values, flips the pressure sign back and shifts it
/// to zero area-weighted mean.
Solution lift_solution(const PolygonalMesh& mesh, const SaddleSystem& system,
                       std::span<const double> raw, const BoundaryData& bc);

} // namespace swg
