#include "swg/output.hpp"

#include "swg/element.hpp"
#include "swg/error.hpp"

#include <cstdio>
#include <fstream>
#include <string>

namespace swg {

namespace {

std::string fmt(const char* spec, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string opt(const char* spec, const std::optional<double>& v)
{
    return v ? fmt(spec, *v) : std::string();
}

std::string full(double v) { return fmt("%.17g", v); }

// s-extension of both components evaluated at each cell centroid.
std::vector<Vec2> centroid_velocity(const PolygonalMesh& mesh, const Solution& s)
{
    std::vector<Vec2> out(static_cast<std::size_t>(mesh.num_cells()));
    for (const Cell& c : mesh.cells()) {
        const ElementGeometry geom = element_geometry(mesh, c.id);
        std::vector<double> lu;
        std::vector<double> lv;
        for (const CellEdge& ce : c.edges) {
            lu.push_back(s.u[static_cast<std::size_t>(ce.edge)]);
            lv.push_back(s.v[static_cast<std::size_t>(ce.edge)]);
        }
        const LinearExtension eu = extension_coefficients(geom, lu);
        const LinearExtension ev = extension_coefficients(geom, lv);
        out[static_cast<std::size_t>(c.id)] = {eu(c.centroid), ev(c.centroid)};
    }
    return out;
}

} // namespace

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    return out;
}

void write_table_csv(std::ostream& out, const ConvergenceTable& table)
{
    out << "n,||u_h-u||_0,r,||u_h-u||_1,r,||v_h-v||_0,r,||v_h-v||_1,r,||p_h-p||_0,r\n";
    const char* e = "%.2e";
    const char* r = "%.2f";
    for (const ConvergenceRow& row : table.rows) {
        const ErrorReport& x = row.errors;
        const OrderReport& o = row.orders;
        out << row.n << ',' << opt(e, x.l2_u) << ',' << opt(r, o.l2_u) << ',' << opt(e, x.h1_u)
            << ',' << opt(r, o.h1_u) << ',' << opt(e, x.l2_v) << ',' << opt(r, o.l2_v) << ','
            << opt(e, x.h1_v) << ',' << opt(r, o.h1_v) << ',' << opt(e, x.l2_p) << ','
            << opt(r, o.l2_p) << '\n';
    }
}

void write_table_csv_full(std::ostream& out, const ConvergenceTable& table)
{
    out << "n,l2_u,r_l2_u,h1_u,r_h1_u,l2_v,r_l2_v,h1_v,r_h1_v,l2_p,r_l2_p,l2_s,r_l2_s,tribar,"
           "r_tribar,div_max,iterations,relative_residual,converged\n";
    const char* g = "%.17g";
    for (const ConvergenceRow& row : table.rows) {
        const ErrorReport& x = row.errors;
        const OrderReport& o = row.orders;
        out << row.n << ',' << opt(g, x.l2_u) << ',' << opt(g, o.l2_u) << ',' << opt(g, x.h1_u)
            << ',' << opt(g, o.h1_u) << ',' << opt(g, x.l2_v) << ',' << opt(g, o.l2_v) << ','
            << opt(g, x.h1_v) << ',' << opt(g, o.h1_v) << ',' << opt(g, x.l2_p) << ','
            << opt(g, o.l2_p) << ',' << full(x.l2_s) << ',' << opt(g, o.l2_s) << ','
            << full(x.tribar) << ',' << opt(g, o.tribar) << ',' << full(x.div_max) << ','
            << row.report.iterations << ',' << full(row.report.relative_residual) << ','
            << (row.report.converged ? 1 : 0) << '\n';
    }
}

void write_vtk(std::ostream& out, const PolygonalMesh& mesh, const Solution& s)
{
    out << "# vtk DataFile Version 3.0\n";
    out << "stokes solution\n";
    out << "ASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.num_vertices() << " double\n";
    for (const Vertex& v : mesh.vertices()) {
        out << full(v.pos.x) << ' ' << full(v.pos.y) << " 0\n";
    }
    std::size_t total = 0;
    for (const Cell& c : mesh.cells()) {
        total += c.vertices.size() + 1;
    }
    out << "CELLS " << mesh.num_cells() << ' ' << total << '\n';
    for (const Cell& c : mesh.cells()) {
        out << c.vertices.size();
        for (Index v : c.vertices) {
            out << ' ' << v;
        }
        out << '\n';
    }
    out << "CELL_TYPES " << mesh.num_cells() << '\n';
    for (Index k = 0; k < mesh.num_cells(); ++k) {
        out << "7\n";
    }
    out << "CELL_DATA " << mesh.num_cells() << '\n';
    out << "SCALARS pressure double 1\nLOOKUP_TABLE default\n";
    for (double p : s.p) {
        out << full(p) << '\n';
    }
    out << "VECTORS velocity double\n";
    for (const Vec2& w : centroid_velocity(mesh, s)) {
        out << full(w.x) << ' ' << full(w.y) << " 0\n";
    }
    out << "SCALARS divergence double 1\nLOOKUP_TABLE default\n";
    for (double d : cell_divergence(mesh, s.u, s.v)) {
        out << full(d) << '\n';
    }
}

void write_trace_csv(std::ostream& out, const PolygonalMesh& mesh, const Solution& s)
{
    out << "edge,x,y,u,v\n";
    for (const Edge& e : mesh.edges()) {
        const auto k = static_cast<std::size_t>(e.id);
        out << e.id << ',' << full(e.midpoint.x) << ',' << full(e.midpoint.y) << ',' << full(s.u[k])
            << ',' << full(s.v[k]) << '\n';
    }
}

void write_cell_csv(std::ostream& out, const PolygonalMesh& mesh, const Solution& s)
{
    out << "cell,x,y,p,u,v\n";
    const std::vector<Vec2> vel = centroid_velocity(mesh, s);
    for (const Cell& c : mesh.cells()) {
        const auto k = static_cast<std::size_t>(c.id);
        out << c.id << ',' << full(c.centroid.x) << ',' << full(c.centroid.y) << ',' << full(s.p[k])
            << ',' << full(vel[k].x) << ',' << full(vel[k].y) << '\n';
    }
}

} // namespace swg
