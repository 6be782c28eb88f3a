#pragma once

#include "swg/assembly.hpp"

#include <vector>

namespace swg {

struct SolveReport {
    int iterations = 0;
    double relative_residual = 0.0; ///< ||b - A x|| / ||b||, Euclidean
    bool converged = false;
    double wall_time = 0.0; ///< seconds
};

struct SolveResult {
    std::vector<double> x;
    SolveReport report;
};

/// Preconditioned MINRES with the constant-pressure direction projected out
/// of every Krylov vector. Preconditioner: 1/K_ii on velocity dofs, 1/|T| on
/// pressure dofs. maxit <= 0 selects 20 * dimension.
///
/// Throws CompatibilityError if the pressure part of the rhs has a nonzero
/// sum (relative 1e-10). Running out of iterations is not an error: the
/// report says converged = false and x holds the last iterate.
SolveResult solve_saddle(const SaddleSystem& system, double tol = 1e-10, int maxit = 0);

/// Dense LU with the last pressure dof pinned to zero, followed by a shift
/// of the pressure to zero area-weighted mean. Dimension must not exceed
/// 5000. Throws SolverError if the pinned matrix is singular.
std::vector<double> direct_solve_dense(const SaddleSystem& system);

} // namespace swg
