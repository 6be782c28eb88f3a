#include "swg/assembly.hpp"
#include "swg/cases.hpp"
#include "swg/error.hpp"
#include "swg/fdstencil.hpp"
#include "swg/grid.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace swg;

namespace {

const VectorField kZero = [](Point) { return Vec2{0.0, 0.0}; };

struct Pair {
    SaddleSystem swg;
    SaddleSystem fd;
};

Pair build_both(int n, const Rect& dom, double kappa, const StokesCase& c)
{
    const PolygonalMesh m = build_uniform_rect_mesh(n, dom);
    const BoundaryData bc = BoundaryData::from_function(m, c.velocity);
    return {assemble(m, kappa, c.forcing, bc, LoadRule::Fd),
            build_fd_system(GridIndexer(n, dom), kappa, c.forcing, bc)};
}

} // namespace

TEST(Weights, FivePointAtKappaFour)
{
    const StencilWeights w = stencil_weights(4.0);
    EXPECT_EQ(w.c1, 0.0);
    EXPECT_EQ(w.c2, 4.0);
    EXPECT_EQ(w.c3, 0.0);
    EXPECT_EQ(w.c4, -1.0);
}

TEST(Weights, KappaTwoAndRowSum)
{
    const StencilWeights w = stencil_weights(2.0);
    EXPECT_EQ(w.c1, -0.5);
    EXPECT_EQ(w.c2, 3.0);
    EXPECT_EQ(w.c3, -0.5);
    EXPECT_EQ(w.c4, -0.5);
    for (double k : {0.1, 1.0, 4.0, 10.0, 123.0}) {
        const StencilWeights s = stencil_weights(k);
        EXPECT_NEAR(s.c1 + s.c2 + s.c3 + 4 * s.c4, 0.0, 1e-13);
    }
    EXPECT_THROW(stencil_weights(0.0), Error);
}

TEST(FdSystem, FivePointInteriorRow)
{
    const int n = 4;
    const GridIndexer g(n, unit_square());
    const SaddleSystem s = build_fd_system(g, 4.0, kZero, BoundaryData::homogeneous(
                                                             build_uniform_rect_mesh(n, unit_square())));
    const double h = 0.25;
    const Index e = g.vertical_edge(2, 1);
    const auto row = static_cast<std::size_t>(s.dofs.u_dof(e));
    EXPECT_EQ(s.matrix.coeff(row, row), 4.0);
    const Index nbrs[] = {g.horizontal_edge(1, 1), g.horizontal_edge(1, 2), g.horizontal_edge(2, 1),
                          g.horizontal_edge(2, 2)};
    for (Index nb : nbrs) {
        EXPECT_EQ(s.matrix.coeff(row, static_cast<std::size_t>(s.dofs.u_dof(nb))), -1.0);
    }
    // c1 = c3 = 0 for kappa = 4
    EXPECT_EQ(s.matrix.coeff(row, static_cast<std::size_t>(s.dofs.u_dof(g.vertical_edge(1, 1)))), 0.0);
    EXPECT_EQ(s.matrix.coeff(row, static_cast<std::size_t>(s.dofs.p_dof(g.cell(1, 1)))), h);
    EXPECT_EQ(s.matrix.coeff(row, static_cast<std::size_t>(s.dofs.p_dof(g.cell(2, 1)))), -h);
    std::size_t nnz_velocity = 0;
    for (std::size_t k = s.matrix.row_ptr()[row]; k < s.matrix.row_ptr()[row + 1]; ++k) {
        if (s.matrix.col_idx()[k] < static_cast<std::size_t>(s.dofs.num_velocity()) &&
            s.matrix.values()[k] != 0.0) {
            ++nnz_velocity;
        }
    }
    EXPECT_EQ(nnz_velocity, 5u);
}

TEST(FdSystem, ContinuityPattern)
{
    const int n = 3;
    const PolygonalMesh m = build_uniform_rect_mesh(n, unit_square());
    const GridIndexer g(n, unit_square());
    const SaddleSystem s = build_fd_system(g, 1.0, kZero, BoundaryData::homogeneous(m));
    const double h = 1.0 / n;
    const auto row = static_cast<std::size_t>(s.dofs.p_dof(g.cell(1, 1)));
    const auto col = [&](Index dof) { return static_cast<std::size_t>(dof); };
    EXPECT_EQ(s.matrix.coeff(row, col(s.dofs.u_dof(g.vertical_edge(2, 1)))), h);
    EXPECT_EQ(s.matrix.coeff(row, col(s.dofs.u_dof(g.vertical_edge(1, 1)))), -h);
    EXPECT_EQ(s.matrix.coeff(row, col(s.dofs.v_dof(g.horizontal_edge(1, 2)))), h);
    EXPECT_EQ(s.matrix.coeff(row, col(s.dofs.v_dof(g.horizontal_edge(1, 1)))), -h);
    EXPECT_EQ(s.matrix.row_ptr()[row + 1] - s.matrix.row_ptr()[row], 4u);
    EXPECT_TRUE(s.matrix.is_symmetric());
}

TEST(FdSystem, LoadIsHalfHSquaredF)
{
    const int n = 4;
    const PolygonalMesh m = build_uniform_rect_mesh(n, unit_square());
    const GridIndexer g(n, unit_square());
    const SaddleSystem s = build_fd_system(g, 4.0, [](Point) { return Vec2{1.0, 0.0}; },
                                           BoundaryData::homogeneous(m));
    for (int j = 0; j < n; ++j) {
        for (int i = 1; i < n; ++i) {
            EXPECT_EQ(s.rhs[static_cast<std::size_t>(s.dofs.u_dof(g.vertical_edge(i, j)))],
                      0.0625 / 2);
            EXPECT_EQ(s.rhs[static_cast<std::size_t>(s.dofs.v_dof(g.vertical_edge(i, j)))], 0.0);
        }
    }
}

TEST(FdSystem, ZeroDataZeroSolution)
{
    const PolygonalMesh m = build_uniform_rect_mesh(4, unit_square());
    const SaddleSystem s = build_fd_system(GridIndexer(4, unit_square()), 3.0, kZero,
                                           BoundaryData::homogeneous(m));
    for (double b : s.rhs) {
        EXPECT_EQ(b, 0.0);
    }
}

TEST(FdSystem, RejectsNonSquareCells)
{
    const Rect dom{0, 0, 2, 1};
    const PolygonalMesh m = build_uniform_rect_mesh(2, dom);
    EXPECT_THROW(build_fd_system(GridIndexer(2, dom), 4.0, kZero, BoundaryData::homogeneous(m)),
                 ModeError);
}

TEST(Equivalence, MatchesSwgWithBoundaryData)
{
    for (int n : {2, 4, 8}) {
        for (double kappa : {1.0, 4.0, 10.0}) {
            const Pair p = build_both(n, unit_square(), kappa, patch());
            const EquivalenceReport r = check_equivalence(p.swg, p.fd);
            EXPECT_LE(r.matrix, 1e-12) << n << " " << kappa;
            EXPECT_LE(r.rhs, 1e-12) << n << " " << kappa;
            EXPECT_EQ(p.swg.dofs, p.fd.dofs);
        }
    }
}

TEST(Equivalence, PiDomainCaseOne)
{
    const double pi = std::numbers::pi;
    const Pair p = build_both(8, {0, 0, pi, pi}, 4.0, case1());
    EXPECT_LE(check_equivalence(p.swg, p.fd).max(), 1e-12);
}

TEST(Equivalence, DetectsPerturbation)
{
    Pair p = build_both(4, unit_square(), 4.0, case2());
    p.swg.matrix.values()[7] += 1e-6;
    EXPECT_GE(check_equivalence(p.swg, p.fd).matrix, 1e-6 * 0.999);
    Pair q = build_both(2, unit_square(), 4.0, case2());
    EXPECT_THROW(check_equivalence(p.swg, q.fd), SolverError);
}
