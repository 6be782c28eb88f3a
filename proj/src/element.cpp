#include "swg/element.hpp"

#include "swg/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace swg {

namespace {

constexpr double kMaxGramCondition = 1e12;

// Inverse of a symmetric 3x3 matrix through its adjugate. Fills only the
// upper triangle and mirrors it so the result is exactly symmetric.
// Returns the 1-norm condition estimate ||G||_1 ||G^{-1}||_1.
double symmetric_inverse3(const Eigen::Matrix3d& g, Eigen::Matrix3d& inv)
{
    Eigen::Matrix3d adj;
    adj(0, 0) = g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1);
    adj(0, 1) = g(0, 2) * g(2, 1) - g(0, 1) * g(2, 2);
    adj(0, 2) = g(0, 1) * g(1, 2) - g(0, 2) * g(1, 1);
    adj(1, 1) = g(0, 0) * g(2, 2) - g(0, 2) * g(2, 0);
    adj(1, 2) = g(0, 2) * g(1, 0) - g(0, 0) * g(1, 2);
    adj(2, 2) = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    adj(1, 0) = adj(0, 1);
    adj(2, 0) = adj(0, 2);
    adj(2, 1) = adj(1, 2);
    const double det = g(0, 0) * adj(0, 0) + g(0, 1) * adj(1, 0) + g(0, 2) * adj(2, 0);
    if (det == 0.0 || !std::isfinite(det)) {
        return std::numeric_limits<double>::infinity();
    }
    inv = adj / det;
    const double cond = g.cwiseAbs().colwise().sum().maxCoeff() *
                        inv.cwiseAbs().colwise().sum().maxCoeff();
    return std::isfinite(cond) ? cond : std::numeric_limits<double>::infinity();
}

ElementGeometry finish_geometry(ElementGeometry geom)
{
    const auto n = static_cast<Eigen::Index>(geom.midpoints.size());
    if (n < 3) {
        throw GeometryError("element geometry: fewer than 3 edges");
    }
    geom.m.resize(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Point& p = geom.midpoints[static_cast<std::size_t>(i)];
        geom.m(i, 0) = 1.0;
        geom.m(i, 1) = p.x - geom.ref_point.x;
        geom.m(i, 2) = p.y - geom.ref_point.y;
    }
    geom.diameter = geom.lengths.maxCoeff();

    // Condition the Gram matrix on coordinates scaled by the diameter so the
    // estimate does not depend on the absolute element size.
    const double s = 1.0 / geom.diameter;
    Eigen::Matrix3d scaled = Eigen::Matrix3d::Zero();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Vector3d r(1.0, s * geom.m(i, 1), s * geom.m(i, 2));
        scaled.noalias() += geom.lengths(i) * r * r.transpose();
    }
    Eigen::Matrix3d scaled_inv;
    const double cond = symmetric_inverse3(scaled, scaled_inv);
    if (!(cond <= kMaxGramCondition)) {
        throw GeometryError("element geometry: edge midpoints are (nearly) collinear, "
                            "condition estimate of M^t E M exceeds 1e12");
    }
    const Eigen::DiagonalMatrix<double, 3> scale(1.0, s, s);
    geom.gram_inverse = scale * scaled_inv * scale;
    return geom;
}

} // namespace

ElementGeometry element_geometry(const PolygonalMesh& mesh, Index cell)
{
    const Cell& c = mesh.cell(cell);
    const std::size_t n = c.edges.size();
    ElementGeometry geom;
    geom.lengths.resize(static_cast<Eigen::Index>(n));
    geom.normals.resize(static_cast<Eigen::Index>(n), 2);
    geom.midpoints.resize(n);
    geom.endpoints.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Edge& e = mesh.edge(c.edges[k].edge);
        const Point nrm = mesh.outward_normal(c, k);
        const auto i = static_cast<Eigen::Index>(k);
        geom.lengths(i) = e.length;
        geom.normals(i, 0) = nrm.x;
        geom.normals(i, 1) = nrm.y;
        geom.midpoints[k] = e.midpoint;
        geom.endpoints[k] = {mesh.vertex(c.vertices[k]).pos,
                             mesh.vertex(c.vertices[(k + 1) % n]).pos};
    }
    geom.area = c.area;
    geom.ref_point = c.centroid;
    return finish_geometry(std::move(geom));
}

ElementGeometry element_geometry(std::span<const LocalEdge> edges)
{
    const std::size_t n = edges.size();
    ElementGeometry geom;
    geom.lengths.resize(static_cast<Eigen::Index>(n));
    geom.normals.resize(static_cast<Eigen::Index>(n), 2);
    geom.midpoints.resize(n);
    geom.endpoints.assign(edges.begin(), edges.end());
    double twice_area = 0.0;
    Point moment{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        const Point a = edges[k].a;
        const Point b = edges[k].b;
        const Point t = b - a;
        const double len = norm(t);
        if (!(len > 0.0)) {
            throw GeometryError("element geometry: zero-length edge");
        }
        const auto i = static_cast<Eigen::Index>(k);
        geom.lengths(i) = len;
        geom.normals(i, 0) = t.y / len;
        geom.normals(i, 1) = -t.x / len;
        geom.midpoints[k] = 0.5 * (a + b);
        const double w = cross(a, b);
        twice_area += w;
        moment = moment + w * (a + b);
    }
    geom.area = 0.5 * twice_area;
    if (!(geom.area > 0.0)) {
        throw GeometryError("element geometry: non-positive area");
    }
    geom.ref_point = (1.0 / (3.0 * twice_area)) * moment;
    return finish_geometry(std::move(geom));
}

LinearExtension extension_coefficients(const ElementGeometry& geom, std::span<const double> trace)
{
    const Index n = geom.size();
    if (static_cast<Index>(trace.size()) != n) {
        throw GeometryError("extension: trace size does not match edge count");
    }
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (Eigen::Index i = 0; i < n; ++i) {
        rhs += (geom.lengths(i) * trace[static_cast<std::size_t>(i)]) * geom.m.row(i).transpose();
    }
    const Eigen::Vector3d alpha = geom.gram_inverse * rhs;
    return {alpha(0), alpha(1), alpha(2), geom.ref_point};
}

Point weak_gradient(const ElementGeometry& geom, std::span<const double> trace)
{
    Point g{0.0, 0.0};
    for (Eigen::Index i = 0; i < geom.size(); ++i) {
        const double w = trace[static_cast<std::size_t>(i)] * geom.lengths(i);
        g.x += w * geom.normals(i, 0);
        g.y += w * geom.normals(i, 1);
    }
    return (1.0 / geom.area) * g;
}

double weak_divergence(const ElementGeometry& geom, std::span<const double> trace_u,
                       std::span<const double> trace_v)
{
    double flux = 0.0;
    for (Eigen::Index i = 0; i < geom.size(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        flux += (trace_u[k] * geom.normals(i, 0) + trace_v[k] * geom.normals(i, 1)) *
                geom.lengths(i);
    }
    return flux / geom.area;
}

Eigen::Matrix<double, 3, Eigen::Dynamic> extension_matrix(const ElementGeometry& geom)
{
    Eigen::Matrix<double, 3, Eigen::Dynamic> d(3, geom.size());
    for (Eigen::Index j = 0; j < geom.size(); ++j) {
        d.col(j) = geom.gram_inverse * (geom.lengths(j) * geom.m.row(j).transpose());
    }
    return d;
}

Matrix stabilizer_matrix(const ElementGeometry& geom)
{
    const Index n = geom.size();
    const double hinv = 1.0 / geom.diameter;
    Matrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::RowVector3d mi = geom.m.row(i) * geom.gram_inverse;
        for (Eigen::Index j = i; j < n; ++j) {
            const double proj = geom.lengths(i) * mi.dot(geom.m.row(j)) * geom.lengths(j);
            const double e = i == j ? geom.lengths(i) : 0.0;
            a(i, j) = hinv * (e - proj);
            a(j, i) = a(i, j);
        }
    }
    return a;
}

Matrix gradient_matrix(const ElementGeometry& geom)
{
    const Index n = geom.size();
    Matrix b(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double nn = geom.normals(i, 0) * geom.normals(j, 0) +
                              geom.normals(i, 1) * geom.normals(j, 1);
            b(i, j) = nn * (geom.lengths(i) * geom.lengths(j)) / geom.area;
        }
    }
    return b;
}

DivergenceVectors divergence_vectors(const ElementGeometry& geom)
{
    DivergenceVectors q;
    q.q1 = geom.lengths.cwiseProduct(geom.normals.col(0));
    q.q2 = geom.lengths.cwiseProduct(geom.normals.col(1));
    return q;
}

LoadRule parse_load_rule(std::string_view name)
{
    if (name == "poly-deg2") {
        return LoadRule::PolyDeg2;
    }
    if (name == "simpson-mid") {
        return LoadRule::SimpsonMid;
    }
    if (name == "fd") {
        return LoadRule::Fd;
    }
    throw ModeError("unknown quadrature rule '" + std::string(name) +
                    "' (expected poly-deg2, simpson-mid or fd)");
}

std::string_view to_string(LoadRule rule)
{
    switch (rule) {
    case LoadRule::PolyDeg2:
        return "poly-deg2";
    case LoadRule::SimpsonMid:
        return "simpson-mid";
    case LoadRule::Fd:
        return "fd";
    }
    return "?";
}

bool is_axis_aligned_rectangle(const ElementGeometry& geom)
{
    if (geom.size() != 4) {
        return false;
    }
    for (Eigen::Index i = 0; i < 4; ++i) {
        const double nx = std::abs(geom.normals(i, 0));
        const double ny = std::abs(geom.normals(i, 1));
        if (std::min(nx, ny) > 1e-12) {
            return false;
        }
    }
    return true;
}

double integrate_poly_deg2(const ElementGeometry& geom, const ScalarField& g)
{
    const Point c = geom.ref_point;
    double sum = 0.0;
    for (const LocalEdge& e : geom.endpoints) {
        const double tri = 0.5 * cross(e.a - c, e.b - c);
        const double s = g(0.5 * (c + e.a)) + g(0.5 * (e.a + e.b)) + g(0.5 * (e.b + c));
        sum += tri / 3.0 * s;
    }
    return sum;
}

Vector load_vector(const ElementGeometry& geom, const ScalarField& f, LoadRule rule)
{
    const Index n = geom.size();
    Vector out = Vector::Zero(n);
    if (rule != LoadRule::PolyDeg2 && !is_axis_aligned_rectangle(geom)) {
        throw ModeError("load vector: rule '" + std::string(to_string(rule)) +
                        "' requires an axis-aligned rectangular cell");
    }
    const auto d = extension_matrix(geom);
    const Point c = geom.ref_point;
    switch (rule) {
    case LoadRule::PolyDeg2: {
        // Evaluate f once per quadrature point and reuse it for every basis.
        for (const LocalEdge& e : geom.endpoints) {
            const double w = 0.5 * cross(e.a - c, e.b - c) / 3.0;
            for (const Point q : {0.5 * (c + e.a), 0.5 * (e.a + e.b), 0.5 * (e.b + c)}) {
                const double fq = w * f(q);
                for (Eigen::Index j = 0; j < n; ++j) {
                    out(j) += fq * (d(0, j) + d(1, j) * (q.x - c.x) + d(2, j) * (q.y - c.y));
                }
            }
        }
        break;
    }
    case LoadRule::SimpsonMid: {
        double x_lo = geom.endpoints[0].a.x;
        double x_hi = x_lo;
        double y_lo = geom.endpoints[0].a.y;
        double y_hi = y_lo;
        for (const LocalEdge& e : geom.endpoints) {
            x_lo = std::min({x_lo, e.a.x, e.b.x});
            x_hi = std::max({x_hi, e.a.x, e.b.x});
            y_lo = std::min({y_lo, e.a.y, e.b.y});
            y_hi = std::max({y_hi, e.a.y, e.b.y});
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            const bool across_x = std::abs(geom.normals(j, 0)) > std::abs(geom.normals(j, 1));
            const std::array<Point, 3> pts =
                across_x ? std::array<Point, 3>{Point{x_lo, c.y}, c, Point{x_hi, c.y}}
                         : std::array<Point, 3>{Point{c.x, y_lo}, c, Point{c.x, y_hi}};
            constexpr std::array<double, 3> wts{1.0, 4.0, 1.0};
            double sum = 0.0;
            for (std::size_t k = 0; k < 3; ++k) {
                const Point q = pts[k];
                sum += wts[k] * f(q) * (d(0, j) + d(1, j) * (q.x - c.x) + d(2, j) * (q.y - c.y));
            }
            out(j) = geom.area / 6.0 * sum;
        }
        break;
    }
    case LoadRule::Fd:
        for (Eigen::Index j = 0; j < n; ++j) {
            out(j) = 0.25 * geom.area * f(geom.midpoints[static_cast<std::size_t>(j)]);
        }
        break;
    }
    return out;
}

ElementMatrices element_matrices(const ElementGeometry& geom, double kappa, const ScalarField& f1,
                                 const ScalarField& f2, LoadRule rule)
{
    if (!(kappa > 0.0)) {
        throw Error("element matrices: kappa must be positive");
    }
    ElementMatrices em;
    em.a = stabilizer_matrix(geom);
    em.b = gradient_matrix(geom);
    em.velocity = kappa * em.a + em.b;
    auto q = divergence_vectors(geom);
    em.q1 = std::move(q.q1);
    em.q2 = std::move(q.q2);
    em.d = extension_matrix(geom);
    em.f1 = load_vector(geom, f1, rule);
    em.f2 = load_vector(geom, f2, rule);
    return em;
}

} // namespace swg
