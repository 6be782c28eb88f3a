#pragma once

#include "swg/mesh.hpp"

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swg {

using ScalarField = std::function<double(Point)>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Straight edge given by its endpoints in counterclockwise order around the
/// element; used to build geometry without a mesh.
struct LocalEdge {
    Point a;
    Point b;
};

/// Per-element data used by every SWG kernel. Rows of `m` are
/// (1, x_i - x_T, y_i - y_T) for edge midpoints (x_i, y_i) and the area
/// centroid (x_T, y_T).
struct ElementGeometry {
    Eigen::Matrix<double, Eigen::Dynamic, 3> m;
    Vector lengths;
    Eigen::Matrix<double, Eigen::Dynamic, 2> normals;
    std::vector<Point> midpoints;
    std::vector<LocalEdge> endpoints;
    double area = 0.0;
    Point ref_point;
    double diameter = 0.0;
    Eigen::Matrix3d gram_inverse; ///< (M^t E M)^{-1}

    Index size() const { return static_cast<Index>(lengths.size()); }
};

/// Geometry of mesh cell `cell` in its counterclockwise edge order.
/// Throws GeometryError if the midpoint Gram matrix is singular or
/// ill-conditioned.
ElementGeometry element_geometry(const PolygonalMesh& mesh, Index cell);

/// Geometry from explicitly oriented edges. The edges may be listed in any
/// order as long as each runs counterclockwise around the element.
ElementGeometry element_geometry(std::span<const LocalEdge> edges);

/// s(u_b) = alpha0 + alpha1 (x - x_T) + alpha2 (y - y_T).
struct LinearExtension {
    double alpha0 = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    Point ref_point;

    double operator()(Point p) const
    {
        return alpha0 + alpha1 * (p.x - ref_point.x) + alpha2 * (p.y - ref_point.y);
    }
};

/// Edge-length weighted least-squares linear fit to the midpoint values.
LinearExtension extension_coefficients(const ElementGeometry& geom, std::span<const double> trace);

/// (1/|T|) sum_i trace_i |e_i| n_i
Point weak_gradient(const ElementGeometry& geom, std::span<const double> trace);

/// (1/|T|) sum_i (u_i, v_i).n_i |e_i|
double weak_divergence(const ElementGeometry& geom, std::span<const double> trace_u,
                       std::span<const double> trace_v);

/// A = h^{-1} (E - E M (M^t E M)^{-1} M^t E) with h the element diameter.
Matrix stabilizer_matrix(const ElementGeometry& geom);

/// b_ij = (n_i . n_j) |e_i| |e_j| / |T|
Matrix gradient_matrix(const ElementGeometry& geom);

struct DivergenceVectors {
    Vector q1; ///< |e_i| n_{i,x}
    Vector q2; ///< |e_i| n_{i,y}
};

DivergenceVectors divergence_vectors(const ElementGeometry& geom);

/// D = (M^t E M)^{-1} M^t E; column j holds the extension coefficients of
/// the j-th edge basis function.
Eigen::Matrix<double, 3, Eigen::Dynamic> extension_matrix(const ElementGeometry& geom);

enum class LoadRule {
    PolyDeg2,   ///< centroid fan, 3-point edge-midpoint rule per triangle
    SimpsonMid, ///< rectangles: Simpson across the edge, midpoint along it
    Fd,         ///< rectangles: F_j = |T|/4 f(M_j)
};

LoadRule parse_load_rule(std::string_view name);
std::string_view to_string(LoadRule rule);

/// True for a 4-edge cell whose edges are all axis-aligned.
bool is_axis_aligned_rectangle(const ElementGeometry& geom);

/// Integral over the element with the centroid-fan rule (exact for
/// quadratic integrands).
double integrate_poly_deg2(const ElementGeometry& geom, const ScalarField& g);

/// F_j = int_T f s(w_j), approximated with the requested rule.
Vector load_vector(const ElementGeometry& geom, const ScalarField& f, LoadRule rule);

struct ElementMatrices {
    Matrix a;        ///< stabilizer, h^{-1} included
    Matrix b;        ///< weak-gradient term
    Matrix velocity; ///< kappa A + B, shared by both velocity components
    Vector q1;
    Vector q2;
    Eigen::Matrix<double, 3, Eigen::Dynamic> d;
    Vector f1;
    Vector f2;
};

ElementMatrices element_matrices(const ElementGeometry& geom, double kappa, const ScalarField& f1,
                                 const ScalarField& f2, LoadRule rule);

} // namespace swg
