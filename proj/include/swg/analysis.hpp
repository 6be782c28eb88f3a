#pragma once

#include "swg/assembly.hpp"
#include "swg/cases.hpp"
#include "swg/element.hpp"
#include "swg/mesh.hpp"
#include "swg/solver.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace swg {

/// Per-component pair of norms.
struct ComponentErrors {
    double u = 0.0;
    double v = 0.0;
};

/// sqrt(sum h^2 |w_b - w(m_e)|^2) over every edge midpoint of the uniform
/// grid (h^2 read as hx*hy). ModeError on other meshes.
ComponentErrors l2_velocity_error(const PolygonalMesh& mesh, const Solution& s,
                                  const VectorField& exact);

/// Cell-centred difference quotients against the exact gradient at the
/// cell centre, both directions. ModeError on non-grid meshes.
ComponentErrors h1_cellcenter_error(const PolygonalMesh& mesh, const Solution& s,
                                    const std::function<VelocityGradient(Point)>& exact_gradient);

/// sqrt(sum h^2 |p_T - p(c_T)|^2). ModeError on non-grid meshes.
double l2_pressure_error(const PolygonalMesh& mesh, const Solution& s, const ScalarField& exact);

/// L2 norm of the linear extension of a per-edge scalar field, integrated
/// per cell with the degree-2 fan rule.
double s_extension_l2_norm(const PolygonalMesh& mesh, std::span<const double> trace);

/// L2 norm of s(u_b - Q_b u) over both components. Works on any mesh.
double s_extension_l2_error(const PolygonalMesh& mesh, const Solution& s, const VectorField& exact);

/// sqrt(sum_T |T| |grad_w w|^2 + kappa S_T(w,w)) summed over both components.
double triple_bar_norm(const PolygonalMesh& mesh, std::span<const double> trace_u,
                       std::span<const double> trace_v, double kappa);

/// Weak divergence per cell.
std::vector<double> cell_divergence(const PolygonalMesh& mesh, std::span<const double> trace_u,
                                    std::span<const double> trace_v);

/// max over cells of |weak divergence|.
double divergence_residual(const PolygonalMesh& mesh, const Solution& s);

/// Midpoint values Q_b u of a vector field on every edge.
void interpolate_traces(const PolygonalMesh& mesh, const VectorField& field,
                        std::vector<double>& u, std::vector<double>& v);

struct ErrorReport {
    std::optional<double> l2_u;
    std::optional<double> l2_v;
    std::optional<double> h1_u;
    std::optional<double> h1_v;
    std::optional<double> l2_p;
    double l2_s = 0.0;
    double tribar = 0.0;
    double div_max = 0.0;
};

/// All norms that apply to the mesh; the grid norms stay empty on
/// non-grid meshes.
ErrorReport compute_errors(const PolygonalMesh& mesh, const Solution& s, const StokesCase& c,
                           double kappa);

enum class SystemMode { Swg, Fd };

SystemMode parse_mode(std::string_view name);
std::string_view to_string(SystemMode mode);

struct RunOptions {
    double kappa = 4.0;
    SystemMode mode = SystemMode::Swg;
    LoadRule rule = LoadRule::PolyDeg2;
    double tol = 1e-10;
    int maxit = 0;
    double perturb = 0.0;
    std::uint64_t seed = 1;
};

struct CaseRun {
    SaddleSystem system;
    Solution solution;
    SolveReport report;
};

/// Builds the system (SWG or FD), solves it and lifts the solution.
CaseRun run_case(const StokesCase& c, const PolygonalMesh& mesh, const RunOptions& opt);

/// Mesh used for case runs: the uniform grid, or a perturbed quad mesh if
/// opt.perturb > 0 (not allowed in fd mode).
PolygonalMesh case_mesh(const StokesCase& c, int n, const RunOptions& opt);

/// Observed orders log2(e_coarse/e_fine); empty unless n doubled from the
/// previous row.
struct OrderReport {
    std::optional<double> l2_u;
    std::optional<double> l2_v;
    std::optional<double> h1_u;
    std::optional<double> h1_v;
    std::optional<double> l2_p;
    std::optional<double> l2_s;
    std::optional<double> tribar;
};

struct ConvergenceRow {
    int n = 0;
    ErrorReport errors;
    OrderReport orders;
    SolveReport report;
};

struct ConvergenceTable {
    std::string case_name;
    std::vector<ConvergenceRow> rows;

    bool all_converged() const;
};

/// log2(coarse/fine), empty if either value is missing or not positive.
std::optional<double> observed_order(std::optional<double> coarse, std::optional<double> fine);

ConvergenceTable convergence_table(const StokesCase& c, std::span<const int> ns,
                                   const RunOptions& opt);

} // namespace swg
