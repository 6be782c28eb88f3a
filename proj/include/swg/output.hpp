#pragma once

#include "swg/analysis.hpp"
#include "swg/assembly.hpp"
#include "swg/mesh.hpp"

#include <filesystem>
#include <ostream>

namespace swg {

/// Table columns n, ||u_h-u||_0, r, ||u_h-u||_1, r, ||v_h-v||_0, r,
/// ||v_h-v||_1, r, ||p_h-p||_0, r with values in 3-digit scientific
/// notation and orders with 2 decimals. Missing entries are left empty.
void write_table_csv(std::ostream& out, const ConvergenceTable& table);

/// Every norm, order and solver statistic at full precision (%.17g).
void write_table_csv_full(std::ostream& out, const ConvergenceTable& table);

/// Legacy ASCII VTK unstructured grid: polygon cells with pressure,
/// centroid velocity from the s-extension and weak divergence as cell data.
void write_vtk(std::ostream& out, const PolygonalMesh& mesh, const Solution& s);

/// edge,x,y,u,v per edge midpoint.
void write_trace_csv(std::ostream& out, const PolygonalMesh& mesh, const Solution& s);

/// cell,x,y,p,u,v per cell (velocity at the centroid from the s-extension).
void write_cell_csv(std::ostream& out, const PolygonalMesh& mesh, const Solution& s);

/// Opens `path` for writing or throws Error.
std::ofstream open_output(const std::filesystem::path& path);

} // namespace swg
