#include "swg/assembly.hpp"

#include "swg/error.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace swg {

DofMap number_dofs(const PolygonalMesh& mesh)
{
    DofMap map;
    map.edge_dof.assign(static_cast<std::size_t>(mesh.num_edges()), kNoIndex);
    Index next = 0;
    for (const Edge& e : mesh.edges()) {
        if (!e.boundary) {
            map.edge_dof[static_cast<std::size_t>(e.id)] = next++;
        }
    }
    map.n_interior_edges = next;
    map.n_cells = mesh.num_cells();
    return map;
}

BoundaryData BoundaryData::homogeneous(const PolygonalMesh& mesh)
{
    return {std::vector<Vec2>(static_cast<std::size_t>(mesh.num_edges()), Vec2{0.0, 0.0})};
}

BoundaryData BoundaryData::from_function(const PolygonalMesh& mesh, const VectorField& g)
{
    BoundaryData bc = homogeneous(mesh);
    for (Index e : mesh.boundary_edges()) {
        bc.values[static_cast<std::size_t>(e)] = g(mesh.edge(e).midpoint);
    }
    return bc;
}

double BoundaryData::net_flux(const PolygonalMesh& mesh) const
{
    double flux = 0.0;
    for (Index e : mesh.boundary_edges()) {
        const Edge& ed = mesh.edge(e);
        flux += dot(values[static_cast<std::size_t>(e)], ed.normal) * ed.length;
    }
    return flux;
}

SaddleSystem assemble(const PolygonalMesh& mesh, double kappa, const VectorField& f,
                      const BoundaryData& bc, LoadRule rule, std::span<const Index> cell_order)
{
    if (!(kappa > 0.0)) {
        throw Error("assemble: kappa must be positive");
    }
    if (bc.values.size() != static_cast<std::size_t>(mesh.num_edges())) {
        throw CompatibilityError("assemble: boundary data does not cover every edge");
    }
    double boundary_length = 0.0;
    for (Index e : mesh.boundary_edges()) {
        boundary_length += mesh.edge(e).length;
    }
    const double flux = bc.net_flux(mesh);
    if (std::abs(flux) > 1e-10 * boundary_length) {
        std::ostringstream msg;
        msg << "assemble: boundary data has net flux " << flux
            << " (incompatible with incompressibility)";
        throw CompatibilityError(msg.str());
    }

    SaddleSystem sys;
    sys.dofs = number_dofs(mesh);
    const auto n = static_cast<std::size_t>(sys.dofs.size());
    sys.rhs.assign(n, 0.0);
    sys.pressure_weights.assign(n, 0.0);
    TripletBuilder triplets(n, n);

    std::vector<Index> order;
    if (cell_order.empty()) {
        order.resize(static_cast<std::size_t>(mesh.num_cells()));
        std::iota(order.begin(), order.end(), 0);
    } else {
        order.assign(cell_order.begin(), cell_order.end());
    }

    const ScalarField f1 = [&f](Point p) { return f(p).x; };
    const ScalarField f2 = [&f](Point p) { return f(p).y; };
    const DofMap& dm = sys.dofs;

    for (Index c : order) {
        const Cell& cell = mesh.cell(c);
        const ElementGeometry geom = element_geometry(mesh, c);
        const ElementMatrices em = element_matrices(geom, kappa, f1, f2, rule);
        const auto p = static_cast<std::size_t>(dm.p_dof(c));
        sys.pressure_weights[p] = cell.area;
        const std::size_t nloc = cell.edges.size();

        for (std::size_t i = 0; i < nloc; ++i) {
            const Index ei = cell.edges[i].edge;
            const auto li = static_cast<Eigen::Index>(i);
            const Vec2 gi = bc.values[static_cast<std::size_t>(ei)];
            if (mesh.edge(ei).boundary) {
                sys.rhs[p] -= em.q1(li) * gi.x + em.q2(li) * gi.y;
                continue;
            }
            const auto ui = static_cast<std::size_t>(dm.u_dof(ei));
            const auto vi = static_cast<std::size_t>(dm.v_dof(ei));
            sys.rhs[ui] += em.f1(li);
            sys.rhs[vi] += em.f2(li);
            triplets.add(ui, p, em.q1(li));
            triplets.add(p, ui, em.q1(li));
            triplets.add(vi, p, em.q2(li));
            triplets.add(p, vi, em.q2(li));
            for (std::size_t j = 0; j < nloc; ++j) {
                const Index ej = cell.edges[j].edge;
                const double kij = em.velocity(li, static_cast<Eigen::Index>(j));
                if (mesh.edge(ej).boundary) {
                    const Vec2 gj = bc.values[static_cast<std::size_t>(ej)];
                    sys.rhs[ui] -= kij * gj.x;
                    sys.rhs[vi] -= kij * gj.y;
                } else {
                    triplets.add(ui, static_cast<std::size_t>(dm.u_dof(ej)), kij);
                    triplets.add(vi, static_cast<std::size_t>(dm.v_dof(ej)), kij);
                }
            }
        }
    }
    sys.matrix = triplets.build();
    return sys;
}

Solution lift_solution(const PolygonalMesh& mesh, const SaddleSystem& system,
                       std::span<const double> raw, const BoundaryData& bc)
{
    const DofMap& dm = system.dofs;
    if (raw.size() != static_cast<std::size_t>(dm.size())) {
        throw SolverError("lift_solution: vector length does not match the system");
    }
    Solution s;
    const auto ne = static_cast<std::size_t>(mesh.num_edges());
    s.u.resize(ne);
    s.v.resize(ne);
    for (const Edge& e : mesh.edges()) {
        const auto k = static_cast<std::size_t>(e.id);
        if (e.boundary) {
            s.u[k] = bc.values[k].x;
            s.v[k] = bc.values[k].y;
        } else {
            s.u[k] = raw[static_cast<std::size_t>(dm.u_dof(e.id))];
            s.v[k] = raw[static_cast<std::size_t>(dm.v_dof(e.id))];
        }
    }
    s.p.resize(static_cast<std::size_t>(mesh.num_cells()));
    double weighted = 0.0;
    double area = 0.0;
    for (const Cell& c : mesh.cells()) {
        const double q = raw[static_cast<std::size_t>(dm.p_dof(c.id))];
        s.p[static_cast<std::size_t>(c.id)] = -q;
        weighted += c.area * -q;
        area += c.area;
    }
    const double mean = weighted / area;
    for (double& p : s.p) {
        p -= mean;
    }
    return s;
}

} // namespace swg
