#pragma once

#include "swg/assembly.hpp"
#include "swg/grid.hpp"

namespace swg {

/// Weights of the 7-point velocity stencil: c2 on the edge itself, c1 and
/// c3 on the two parallel neighbours across the adjacent cells, c4 on the
/// four perpendicular edges of those cells.
struct StencilWeights {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double c4 = 0.0;
};

/// c1 = c3 = kappa/4 - 1, c2 = kappa/2 + 2, c4 = -kappa/4.
StencilWeights stencil_weights(double kappa);

/// Finite difference system on the uniform square-cell grid, written
/// directly from the stencils with the same unknown ordering and pressure
/// sign as assemble(). Momentum rows carry (h^2/2) f at the edge midpoint,
/// continuity rows h (u_{i+1} - u_i) + h (v_{j+1} - v_j). Boundary values
/// are moved to the right-hand side.
SaddleSystem build_fd_system(const GridIndexer& grid, double kappa, const VectorField& f,
                             const BoundaryData& bc);

struct EquivalenceReport {
    double matrix = 0.0; ///< max |A_swg - A_fd|
    double rhs = 0.0;    ///< max |b_swg - b_fd|

    double max() const { return matrix > rhs ? matrix : rhs; }
};

/// Entrywise comparison of two systems with the same numbering.
EquivalenceReport check_equivalence(const SaddleSystem& swg, const SaddleSystem& fd);

} // namespace swg
