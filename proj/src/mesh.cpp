#include "swg/mesh.hpp"

#include "swg/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace swg {

namespace {

std::string cell_label(Index c) { return "cell " + std::to_string(c); }

struct EdgeUse {
    Index cell;
    Index from; ///< traversal start vertex in that cell
    Index to;
    std::size_t local; ///< position in the cell's loop
};

// Shoelace formula relative to the first vertex.
double signed_area(std::span<const Point> pts, const std::vector<Index>& loop)
{
    const Point o = pts[static_cast<std::size_t>(loop[0])];
    double a = 0.0;
    for (std::size_t k = 0; k < loop.size(); ++k) {
        const Point p = pts[static_cast<std::size_t>(loop[k])] - o;
        const Point q = pts[static_cast<std::size_t>(loop[(k + 1) % loop.size()])] - o;
        a += cross(p, q);
    }
    return 0.5 * a;
}

// Area centroid, same reference point.
Point polygon_centroid(std::span<const Point> pts, const std::vector<Index>& loop, double area)
{
    const Point o = pts[static_cast<std::size_t>(loop[0])];
    double cx = 0.0;
    double cy = 0.0;
    for (std::size_t k = 0; k < loop.size(); ++k) {
        const Point p = pts[static_cast<std::size_t>(loop[k])] - o;
        const Point q = pts[static_cast<std::size_t>(loop[(k + 1) % loop.size()])] - o;
        const double w = cross(p, q);
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    return {o.x + cx / (6.0 * area), o.y + cy / (6.0 * area)};
}

} // namespace

PolygonalMesh::PolygonalMesh(std::vector<Vertex> vertices, std::vector<Edge> edges,
                             std::vector<Cell> cells)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), cells_(std::move(cells))
{
    for (const Edge& e : edges_) {
        if (e.boundary) {
            boundary_edges_.push_back(e.id);
        }
    }
}

double PolygonalMesh::total_area() const
{
    double a = 0.0;
    for (const Cell& c : cells_) {
        a += c.area;
    }
    return a;
}

PolygonalMesh PolygonalMesh::from_polygons(std::span<const Point> points,
                                           const std::vector<std::vector<Index>>& loops)
{
    const auto nv = static_cast<Index>(points.size());
    for (Index v = 0; v < nv; ++v) {
        const Point p = points[static_cast<std::size_t>(v)];
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw MeshError("vertex " + std::to_string(v) + ": non-finite coordinates");
        }
    }

    std::vector<std::vector<Index>> cleaned;
    cleaned.reserve(loops.size());
    for (std::size_t c = 0; c < loops.size(); ++c) {
        std::vector<Index> loop = loops[c];
        const auto cid = static_cast<Index>(c);
        // tolerate an explicitly repeated closing vertex
        if (loop.size() > 1 && loop.front() == loop.back()) {
            loop.pop_back();
        }
        for (Index v : loop) {
            if (v < 0 || v >= nv) {
                throw MeshError(cell_label(cid) + ": vertex index " + std::to_string(v) +
                                " out of range");
            }
        }
        std::vector<Index> sorted = loop;
        std::sort(sorted.begin(), sorted.end());
        if (loop.size() < 3 || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw MeshError(cell_label(cid) + ": edge loop does not close");
        }
        if (!(signed_area(points, loop) > 0.0)) {
            throw MeshError(cell_label(cid) +
                            ": non-positive area (vertex loop must be counterclockwise)");
        }
        cleaned.push_back(std::move(loop));
    }

    // Collect undirected edges with every use.
    std::map<std::pair<Index, Index>, std::vector<EdgeUse>> uses;
    for (std::size_t c = 0; c < cleaned.size(); ++c) {
        const auto& loop = cleaned[c];
        for (std::size_t k = 0; k < loop.size(); ++k) {
            const Index a = loop[k];
            const Index b = loop[(k + 1) % loop.size()];
            uses[{std::min(a, b), std::max(a, b)}].push_back(
                {static_cast<Index>(c), a, b, k});
        }
    }

    struct Draft {
        Index a;
        Index b;
        Point mid;
        std::vector<EdgeUse> uses;
    };
    std::vector<Draft> drafts;
    drafts.reserve(uses.size());
    for (auto& [key, list] : uses) {
        if (list.size() > 2) {
            throw MeshError(cell_label(list[2].cell) + ": edge (" + std::to_string(key.first) +
                            "," + std::to_string(key.second) +
                            ") shared by more than two cells (dangling edge)");
        }
        if (list.size() == 2 && list[0].from == list[1].from) {
            throw MeshError(cell_label(list[1].cell) + ": edge (" + std::to_string(key.first) +
                            "," + std::to_string(key.second) +
                            ") traversed in the same direction by two cells");
        }
        const Point pa = points[static_cast<std::size_t>(key.first)];
        const Point pb = points[static_cast<std::size_t>(key.second)];
        if (pa == pb) {
            throw MeshError(cell_label(list[0].cell) + ": zero-length edge");
        }
        std::sort(list.begin(), list.end(),
                  [](const EdgeUse& l, const EdgeUse& r) { return l.cell < r.cell; });
        drafts.push_back({key.first, key.second, 0.5 * (pa + pb), list});
    }

    std::sort(drafts.begin(), drafts.end(), [](const Draft& l, const Draft& r) {
        return std::tie(l.mid.y, l.mid.x, l.a, l.b) < std::tie(r.mid.y, r.mid.x, r.a, r.b);
    });

    std::vector<Vertex> vertices(points.size());
    for (Index v = 0; v < nv; ++v) {
        vertices[static_cast<std::size_t>(v)] = {v, points[static_cast<std::size_t>(v)]};
    }

    std::vector<Cell> cells(cleaned.size());
    for (std::size_t c = 0; c < cleaned.size(); ++c) {
        Cell& cell = cells[c];
        cell.id = static_cast<Index>(c);
        cell.vertices = cleaned[c];
        cell.edges.resize(cleaned[c].size());
        cell.area = signed_area(points, cleaned[c]);
        cell.centroid = polygon_centroid(points, cleaned[c], cell.area);
    }

    std::vector<Edge> edges(drafts.size());
    for (std::size_t k = 0; k < drafts.size(); ++k) {
        const Draft& d = drafts[k];
        Edge& e = edges[k];
        e.id = static_cast<Index>(k);
        e.vertices = {d.a, d.b};
        e.midpoint = d.mid;
        const EdgeUse& owner = d.uses[0];
        const Point t = points[static_cast<std::size_t>(owner.to)] -
                        points[static_cast<std::size_t>(owner.from)];
        e.length = norm(t);
        // counterclockwise traversal: outward normal is the tangent turned clockwise
        e.normal = {t.y / e.length, -t.x / e.length};
        e.boundary = d.uses.size() == 1;
        e.cells[0] = owner.cell;
        e.cells[1] = e.boundary ? kNoIndex : d.uses[1].cell;
        for (std::size_t u = 0; u < d.uses.size(); ++u) {
            Cell& cell = cells[static_cast<std::size_t>(d.uses[u].cell)];
            cell.edges[d.uses[u].local] = {e.id, u == 0 ? 1 : -1};
            cell.diameter = std::max(cell.diameter, e.length);
        }
    }

    PolygonalMesh mesh(std::move(vertices), std::move(edges), std::move(cells));
    const auto diags = validate_mesh(mesh);
    if (!diags.empty()) {
        throw MeshError(to_string(diags.front()));
    }
    return mesh;
}

PolygonalMesh build_uniform_rect_mesh(int n, const Rect& domain)
{
    if (n < 1) {
        throw MeshError("uniform mesh: n must be >= 1");
    }
    if (!(domain.width() > 0.0) || !(domain.height() > 0.0)) {
        throw MeshError("uniform mesh: domain must have positive width and height");
    }
    const int nn = n + 1;
    std::vector<Point> pts(static_cast<std::size_t>(nn * nn));
    for (int j = 0; j <= n; ++j) {
        const double y = j == n ? domain.y1 : domain.y0 + domain.height() * j / n;
        for (int i = 0; i <= n; ++i) {
            const double x = i == n ? domain.x1 : domain.x0 + domain.width() * i / n;
            pts[static_cast<std::size_t>(j * nn + i)] = {x, y};
        }
    }
    std::vector<std::vector<Index>> loops;
    loops.reserve(static_cast<std::size_t>(n * n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Index v = j * nn + i;
            loops.push_back({v, v + 1, v + 1 + nn, v + nn});
        }
    }
    return PolygonalMesh::from_polygons(pts, loops);
}

PolygonalMesh build_perturbed_quad_mesh(int n, const Rect& domain, double amplitude,
                                        std::uint64_t seed)
{
    if (!(amplitude >= 0.0) || !(amplitude < 0.3)) {
        throw MeshError("perturbed mesh: amplitude must lie in [0, 0.3)");
    }
    const PolygonalMesh base = build_uniform_rect_mesh(n, domain);
    if (amplitude == 0.0) {
        return base;
    }
    const double hx = domain.width() / n;
    const double hy = domain.height() / n;
    const int nn = n + 1;

    std::vector<Point> pts;
    pts.reserve(base.vertices().size());
    for (const Vertex& v : base.vertices()) {
        pts.push_back(v.pos);
    }
    SplitMix64 rng(seed);
    for (int j = 1; j < n; ++j) {
        for (int i = 1; i < n; ++i) {
            Point& p = pts[static_cast<std::size_t>(j * nn + i)];
            const double rx = rng.symmetric();
            const double ry = rng.symmetric();
            p.x += amplitude * hx * rx;
            p.y += amplitude * hy * ry;
        }
    }

    std::vector<std::vector<Index>> loops;
    loops.reserve(base.cells().size());
    for (const Cell& c : base.cells()) {
        const auto& loop = c.vertices;
        for (std::size_t k = 0; k < loop.size(); ++k) {
            const Point a = pts[static_cast<std::size_t>(loop[k])];
            const Point b = pts[static_cast<std::size_t>(loop[(k + 1) % loop.size()])];
            const Point d = pts[static_cast<std::size_t>(loop[(k + 2) % loop.size()])];
            if (!(cross(b - a, d - b) > 0.0)) {
                throw MeshError("perturbed mesh: " + cell_label(c.id) + " is not convex");
            }
        }
        loops.push_back(loop);
    }
    return PolygonalMesh::from_polygons(pts, loops);
}

PolygonalMesh parse_mesh_json(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("mesh file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("cells")) {
        throw ParseError("mesh file: expected an object with 'vertices' and 'cells'");
    }
    const auto& jv = doc["vertices"];
    const auto& jc = doc["cells"];
    if (!jv.is_array() || !jc.is_array()) {
        throw ParseError("mesh file: 'vertices' and 'cells' must be arrays");
    }
    std::vector<Point> pts;
    pts.reserve(jv.size());
    for (std::size_t i = 0; i < jv.size(); ++i) {
        const auto& p = jv[i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            throw ParseError("mesh file: vertex " + std::to_string(i) + " must be [x, y]");
        }
        pts.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    std::vector<std::vector<Index>> loops;
    loops.reserve(jc.size());
    for (std::size_t c = 0; c < jc.size(); ++c) {
        const auto& loop = jc[c];
        if (!loop.is_array()) {
            throw ParseError("mesh file: cell " + std::to_string(c) + " must be an array");
        }
        std::vector<Index> ids;
        for (const auto& v : loop) {
            if (!v.is_number_integer()) {
                throw ParseError("mesh file: cell " + std::to_string(c) +
                                 " has a non-integer vertex index");
            }
            ids.push_back(v.get<Index>());
        }
        loops.push_back(std::move(ids));
    }
    if (loops.empty()) {
        throw ParseError("mesh file: no cells");
    }
    return PolygonalMesh::from_polygons(pts, loops);
}

PolygonalMesh load_mesh(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open mesh file '" + path.string() + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_mesh_json(ss.str());
}

std::string to_string(const Diagnostic& d)
{
    const char* kind = d.kind == Diagnostic::Kind::Vertex ? "vertex"
                       : d.kind == Diagnostic::Kind::Edge ? "edge"
                                                          : "cell";
    return std::string(kind) + " " + std::to_string(d.id) + ": " + d.message;
}

std::vector<Diagnostic> validate_mesh(const PolygonalMesh& mesh)
{
    std::vector<Diagnostic> out;
    auto report = [&out](Diagnostic::Kind k, Index id, std::string msg) {
        out.push_back({k, id, std::move(msg)});
    };
    const Index nv = mesh.num_vertices();
    const Index ne = mesh.num_edges();
    const Index nc = mesh.num_cells();

    for (Index v = 0; v < nv; ++v) {
        const Vertex& vx = mesh.vertex(v);
        if (vx.id != v) {
            report(Diagnostic::Kind::Vertex, v, "id not dense");
        }
        if (!std::isfinite(vx.pos.x) || !std::isfinite(vx.pos.y)) {
            report(Diagnostic::Kind::Vertex, v, "non-finite coordinates");
        }
    }

    for (Index e = 0; e < ne; ++e) {
        const Edge& ed = mesh.edge(e);
        if (ed.id != e) {
            report(Diagnostic::Kind::Edge, e, "id not dense");
            continue;
        }
        if (ed.vertices[0] < 0 || ed.vertices[0] >= nv || ed.vertices[1] < 0 ||
            ed.vertices[1] >= nv) {
            report(Diagnostic::Kind::Edge, e, "endpoint out of range");
            continue;
        }
        const Point a = mesh.vertex(ed.vertices[0]).pos;
        const Point b = mesh.vertex(ed.vertices[1]).pos;
        const double len = norm(b - a);
        const double tol = 1e-12 * std::max(len, 1e-300);
        if (!(ed.length > 0.0) || std::abs(ed.length - len) > tol) {
            report(Diagnostic::Kind::Edge, e, "length inconsistent with endpoints");
        }
        if (norm(ed.midpoint - 0.5 * (a + b)) > tol) {
            report(Diagnostic::Kind::Edge, e, "midpoint is not the endpoint average");
        }
        if (std::abs(norm(ed.normal) - 1.0) > 1e-12) {
            report(Diagnostic::Kind::Edge, e, "normal is not unit length");
        }
        if (std::abs(dot(ed.normal, b - a)) > tol) {
            report(Diagnostic::Kind::Edge, e, "normal not orthogonal to edge");
        }
        const bool one_cell = ed.cells[0] != kNoIndex && ed.cells[1] == kNoIndex;
        const bool two_cells = ed.cells[0] != kNoIndex && ed.cells[1] != kNoIndex;
        if (ed.boundary != one_cell || (!ed.boundary && !two_cells)) {
            report(Diagnostic::Kind::Edge, e, "boundary flag inconsistent with incident cells");
        }
    }

    std::vector<std::array<int, 2>> signs(static_cast<std::size_t>(ne), {0, 0});
    for (Index c = 0; c < nc; ++c) {
        const Cell& cell = mesh.cell(c);
        if (cell.id != c) {
            report(Diagnostic::Kind::Cell, c, "id not dense");
            continue;
        }
        const std::size_t k_n = cell.edges.size();
        if (k_n < 3 || cell.vertices.size() != k_n) {
            report(Diagnostic::Kind::Cell, c, "edge loop does not close");
            continue;
        }
        if (!(cell.area > 0.0)) {
            report(Diagnostic::Kind::Cell, c, "non-positive area");
        }
        bool loop_ok = true;
        Point closure{0.0, 0.0};
        for (std::size_t k = 0; k < k_n; ++k) {
            const CellEdge& ce = cell.edges[k];
            if (ce.edge < 0 || ce.edge >= ne || (ce.sign != 1 && ce.sign != -1)) {
                loop_ok = false;
                break;
            }
            const Edge& ed = mesh.edge(ce.edge);
            const Index a = cell.vertices[k];
            const Index b = cell.vertices[(k + 1) % k_n];
            const bool joins = (ed.vertices[0] == a && ed.vertices[1] == b) ||
                               (ed.vertices[0] == b && ed.vertices[1] == a);
            if (!joins) {
                loop_ok = false;
                break;
            }
            const int slot = ed.cells[0] == c ? 0 : (ed.cells[1] == c ? 1 : -1);
            if (slot < 0) {
                report(Diagnostic::Kind::Cell, c,
                       "edge " + std::to_string(ce.edge) + " does not list this cell");
            } else {
                signs[static_cast<std::size_t>(ce.edge)][static_cast<std::size_t>(slot)] = ce.sign;
            }
            closure = closure + ed.length * mesh.outward_normal(cell, k);
        }
        if (!loop_ok) {
            report(Diagnostic::Kind::Cell, c, "edge loop does not close");
            continue;
        }
        if (norm(closure) > 1e-12 * cell.diameter) {
            report(Diagnostic::Kind::Cell, c, "closure violated");
        }
    }

    for (Index e = 0; e < ne; ++e) {
        const Edge& ed = mesh.edge(e);
        const auto& s = signs[static_cast<std::size_t>(e)];
        if (ed.boundary) {
            if (s[0] == 0) {
                report(Diagnostic::Kind::Edge, e, "dangling edge (not in any cell loop)");
            }
        } else if (s[0] == 0 || s[1] == 0) {
            report(Diagnostic::Kind::Edge, e, "dangling edge (missing from a cell loop)");
        } else if (s[0] != -s[1]) {
            report(Diagnostic::Kind::Edge, e, "incident cells do not see opposite normals");
        }
    }
    return out;
}

} // namespace swg
