#include "swg/analysis.hpp"

#include "swg/error.hpp"
#include "swg/fdstencil.hpp"
#include "swg/grid.hpp"

#include <algorithm>
#include <cmath>

namespace swg {

namespace {

GridIndexer require_grid(const PolygonalMesh& mesh, const char* what)
{
    std::optional<GridIndexer> g = match_uniform_grid(mesh);
    if (!g) {
        throw ModeError(std::string(what) + " needs a uniform rectangular grid");
    }
    return *g;
}

std::vector<double> gather(const Cell& cell, std::span<const double> trace)
{
    std::vector<double> local;
    local.reserve(cell.edges.size());
    for (const CellEdge& ce : cell.edges) {
        local.push_back(trace[static_cast<std::size_t>(ce.edge)]);
    }
    return local;
}

} // namespace

void interpolate_traces(const PolygonalMesh& mesh, const VectorField& field, std::vector<double>& u,
                        std::vector<double>& v)
{
    u.resize(static_cast<std::size_t>(mesh.num_edges()));
    v.resize(u.size());
    for (const Edge& e : mesh.edges()) {
        const Vec2 w = field(e.midpoint);
        u[static_cast<std::size_t>(e.id)] = w.x;
        v[static_cast<std::size_t>(e.id)] = w.y;
    }
}

ComponentErrors l2_velocity_error(const PolygonalMesh& mesh, const Solution& s,
                                  const VectorField& exact)
{
    const GridIndexer g = require_grid(mesh, "l2_velocity_error");
    const double w = g.hx() * g.hy();
    double su = 0.0;
    double sv = 0.0;
    for (const Edge& e : mesh.edges()) {
        const Vec2 x = exact(e.midpoint);
        const auto k = static_cast<std::size_t>(e.id);
        su += w * (s.u[k] - x.x) * (s.u[k] - x.x);
        sv += w * (s.v[k] - x.y) * (s.v[k] - x.y);
    }
    return {std::sqrt(su), std::sqrt(sv)};
}

ComponentErrors h1_cellcenter_error(const PolygonalMesh& mesh, const Solution& s,
                                    const std::function<VelocityGradient(Point)>& exact_gradient)
{
    const GridIndexer g = require_grid(mesh, "h1_cellcenter_error");
    const double w = g.hx() * g.hy();
    double su = 0.0;
    double sv = 0.0;
    for (int j = 0; j < g.n(); ++j) {
        for (int i = 0; i < g.n(); ++i) {
            const auto l = static_cast<std::size_t>(g.vertical_edge(i, j));
            const auto r = static_cast<std::size_t>(g.vertical_edge(i + 1, j));
            const auto b = static_cast<std::size_t>(g.horizontal_edge(i, j));
            const auto t = static_cast<std::size_t>(g.horizontal_edge(i, j + 1));
            const VelocityGradient d = exact_gradient(g.cell_center(i, j));
            const double ux = (s.u[r] - s.u[l]) / g.hx() - d.ux;
            const double uy = (s.u[t] - s.u[b]) / g.hy() - d.uy;
            const double vx = (s.v[r] - s.v[l]) / g.hx() - d.vx;
            const double vy = (s.v[t] - s.v[b]) / g.hy() - d.vy;
            su += w * (ux * ux + uy * uy);
            sv += w * (vx * vx + vy * vy);
        }
    }
    return {std::sqrt(su), std::sqrt(sv)};
}

double l2_pressure_error(const PolygonalMesh& mesh, const Solution& s, const ScalarField& exact)
{
    const GridIndexer g = require_grid(mesh, "l2_pressure_error");
    const double w = g.hx() * g.hy();
    double sum = 0.0;
    for (int j = 0; j < g.n(); ++j) {
        for (int i = 0; i < g.n(); ++i) {
            const double d = s.p[static_cast<std::size_t>(g.cell(i, j))] - exact(g.cell_center(i, j));
            sum += w * d * d;
        }
    }
    return std::sqrt(sum);
}

double s_extension_l2_norm(const PolygonalMesh& mesh, std::span<const double> trace)
{
    double sum = 0.0;
    for (const Cell& c : mesh.cells()) {
        const ElementGeometry geom = element_geometry(mesh, c.id);
        const LinearExtension ext = extension_coefficients(geom, gather(c, trace));
        sum += integrate_poly_deg2(geom, [&ext](Point p) {
            const double e = ext(p);
            return e * e;
        });
    }
    return std::sqrt(sum);
}

double s_extension_l2_error(const PolygonalMesh& mesh, const Solution& s, const VectorField& exact)
{
    std::vector<double> eu;
    std::vector<double> ev;
    interpolate_traces(mesh, exact, eu, ev);
    for (std::size_t k = 0; k < eu.size(); ++k) {
        eu[k] = s.u[k] - eu[k];
        ev[k] = s.v[k] - ev[k];
    }
    const double a = s_extension_l2_norm(mesh, eu);
    const double b = s_extension_l2_norm(mesh, ev);
    return std::sqrt(a * a + b * b);
}

double triple_bar_norm(const PolygonalMesh& mesh, std::span<const double> trace_u,
                       std::span<const double> trace_v, double kappa)
{
    double sum = 0.0;
    for (const Cell& c : mesh.cells()) {
        const ElementGeometry geom = element_geometry(mesh, c.id);
        const Matrix a = stabilizer_matrix(geom);
        for (std::span<const double> trace : {trace_u, trace_v}) {
            const std::vector<double> local = gather(c, trace);
            const Point g = weak_gradient(geom, local);
            const Eigen::Map<const Vector> w(local.data(), static_cast<Eigen::Index>(local.size()));
            sum += geom.area * dot(g, g) + kappa * w.dot(a * w);
        }
    }
    return std::sqrt(std::max(sum, 0.0));
}

std::vector<double> cell_divergence(const PolygonalMesh& mesh, std::span<const double> trace_u,
                                    std::span<const double> trace_v)
{
    std::vector<double> div(static_cast<std::size_t>(mesh.num_cells()));
    for (const Cell& c : mesh.cells()) {
        double flux = 0.0;
        for (std::size_t k = 0; k < c.edges.size(); ++k) {
            const Index e = c.edges[k].edge;
            const Point n = mesh.outward_normal(c, k);
            const auto i = static_cast<std::size_t>(e);
            flux += (trace_u[i] * n.x + trace_v[i] * n.y) * mesh.edge(e).length;
        }
        div[static_cast<std::size_t>(c.id)] = flux / c.area;
    }
    return div;
}

double divergence_residual(const PolygonalMesh& mesh, const Solution& s)
{
    double worst = 0.0;
    for (double d : cell_divergence(mesh, s.u, s.v)) {
        worst = std::max(worst, std::abs(d));
    }
    return worst;
}

ErrorReport compute_errors(const PolygonalMesh& mesh, const Solution& s, const StokesCase& c,
                           double kappa)
{
    ErrorReport r;
    if (match_uniform_grid(mesh)) {
        const ComponentErrors l2 = l2_velocity_error(mesh, s, c.velocity);
        const ComponentErrors h1 = h1_cellcenter_error(mesh, s, c.gradient);
        r.l2_u = l2.u;
        r.l2_v = l2.v;
        r.h1_u = h1.u;
        r.h1_v = h1.v;
        r.l2_p = l2_pressure_error(mesh, s, c.pressure);
    }
    r.l2_s = s_extension_l2_error(mesh, s, c.velocity);
    std::vector<double> eu;
    std::vector<double> ev;
    interpolate_traces(mesh, c.velocity, eu, ev);
    for (std::size_t k = 0; k < eu.size(); ++k) {
        eu[k] = s.u[k] - eu[k];
        ev[k] = s.v[k] - ev[k];
    }
    r.tribar = triple_bar_norm(mesh, eu, ev, kappa);
    r.div_max = divergence_residual(mesh, s);
    return r;
}

SystemMode parse_mode(std::string_view name)
{
    if (name == "swg") {
        return SystemMode::Swg;
    }
    if (name == "fd") {
        return SystemMode::Fd;
    }
    throw ModeError("unknown mode '" + std::string(name) + "' (expected swg or fd)");
}

std::string_view to_string(SystemMode mode) { return mode == SystemMode::Swg ? "swg" : "fd"; }

PolygonalMesh case_mesh(const StokesCase& c, int n, const RunOptions& opt)
{
    if (opt.perturb > 0.0) {
        if (opt.mode == SystemMode::Fd) {
            throw ModeError("fd mode needs a uniform rectangular grid (no perturbation)");
        }
        return build_perturbed_quad_mesh(n, c.domain, opt.perturb, opt.seed);
    }
    return build_uniform_rect_mesh(n, c.domain);
}

CaseRun run_case(const StokesCase& c, const PolygonalMesh& mesh, const RunOptions& opt)
{
    const BoundaryData bc = BoundaryData::from_function(mesh, c.velocity);
    CaseRun run;
    if (opt.mode == SystemMode::Fd) {
        const std::optional<GridIndexer> g = match_uniform_grid(mesh);
        if (!g) {
            throw ModeError("fd mode needs a uniform rectangular grid");
        }
        run.system = build_fd_system(*g, opt.kappa, c.forcing, bc);
    } else {
        run.system = assemble(mesh, opt.kappa, c.forcing, bc, opt.rule);
    }
    SolveResult res = solve_saddle(run.system, opt.tol, opt.maxit);
    run.report = res.report;
    run.solution = lift_solution(mesh, run.system, res.x, bc);
    return run;
}

bool ConvergenceTable::all_converged() const
{
    return std::all_of(rows.begin(), rows.end(),
                       [](const ConvergenceRow& r) { return r.report.converged; });
}

std::optional<double> observed_order(std::optional<double> coarse, std::optional<double> fine)
{
    if (!coarse || !fine || !(*coarse > 0.0) || !(*fine > 0.0)) {
        return std::nullopt;
    }
    return std::log2(*coarse / *fine);
}

ConvergenceTable convergence_table(const StokesCase& c, std::span<const int> ns,
                                   const RunOptions& opt)
{
    for (std::size_t k = 1; k < ns.size(); ++k) {
        if (ns[k] <= ns[k - 1]) {
            throw Error("convergence table: grid sizes must be strictly increasing");
        }
    }
    ConvergenceTable table;
    table.case_name = c.name;
    for (std::size_t k = 0; k < ns.size(); ++k) {
        const PolygonalMesh mesh = case_mesh(c, ns[k], opt);
        const CaseRun run = run_case(c, mesh, opt);
        ConvergenceRow row;
        row.n = ns[k];
        row.errors = compute_errors(mesh, run.solution, c, opt.kappa);
        row.report = run.report;
        if (k > 0 && ns[k] == 2 * ns[k - 1]) {
            const ErrorReport& prev = table.rows.back().errors;
            row.orders.l2_u = observed_order(prev.l2_u, row.errors.l2_u);
            row.orders.l2_v = observed_order(prev.l2_v, row.errors.l2_v);
            row.orders.h1_u = observed_order(prev.h1_u, row.errors.h1_u);
            row.orders.h1_v = observed_order(prev.h1_v, row.errors.h1_v);
            row.orders.l2_p = observed_order(prev.l2_p, row.errors.l2_p);
            row.orders.l2_s = observed_order(prev.l2_s, row.errors.l2_s);
            row.orders.tribar = observed_order(prev.tribar, row.errors.tribar);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace swg
