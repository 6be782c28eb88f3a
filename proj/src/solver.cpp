#include "swg/solver.hpp"

#include "swg/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace swg {

namespace {

struct PressureBlock {
    std::size_t begin;
    std::size_t end;
    const std::vector<double>* weights;

    // Euclidean projection onto the complement of the constant pressure.
    void remove_mean(std::vector<double>& r) const
    {
        if (begin == end) {
            return;
        }
        double s = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            s += r[i];
        }
        const double mean = s / static_cast<double>(end - begin);
        for (std::size_t i = begin; i < end; ++i) {
            r[i] -= mean;
        }
    }

    // Shift to zero area-weighted mean.
    void remove_weighted_mean(std::vector<double>& y) const
    {
        if (begin == end) {
            return;
        }
        double s = 0.0;
        double a = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            s += (*weights)[i] * y[i];
            a += (*weights)[i];
        }
        const double mean = s / a;
        for (std::size_t i = begin; i < end; ++i) {
            y[i] -= mean;
        }
    }
};

PressureBlock pressure_block(const SaddleSystem& s)
{
    return {static_cast<std::size_t>(s.dofs.num_velocity()), s.size(), &s.pressure_weights};
}

double residual_norm(const SaddleSystem& s, const std::vector<double>& x, std::vector<double>& tmp)
{
    s.matrix.multiply(x, tmp);
    for (std::size_t i = 0; i < tmp.size(); ++i) {
        tmp[i] = s.rhs[i] - tmp[i];
    }
    return norm2(tmp);
}

} // namespace

SolveResult solve_saddle(const SaddleSystem& system, double tol, int maxit)
{
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = system.size();
    if (system.matrix.rows() != n || system.matrix.cols() != n || system.pressure_weights.size() != n) {
        throw SolverError("solve_saddle: inconsistent system dimensions");
    }
    if (!(tol > 0.0)) {
        throw SolverError("solve_saddle: tolerance must be positive");
    }
    if (maxit <= 0) {
        maxit = static_cast<int>(std::min<std::size_t>(20 * n, std::numeric_limits<int>::max()));
    }
    const PressureBlock pb = pressure_block(system);

    SolveResult out;
    out.x.assign(n, 0.0);
    auto finish = [&]() -> SolveResult {
        out.report.wall_time =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return out;
    };

    const double bnorm = norm2(system.rhs);
    if (bnorm == 0.0) {
        out.report.converged = true;
        return finish();
    }
    double psum = 0.0;
    for (std::size_t i = pb.begin; i < pb.end; ++i) {
        psum += system.rhs[i];
    }
    const double ones = std::sqrt(static_cast<double>(pb.end - pb.begin));
    if (pb.end > pb.begin && std::abs(psum) > 1e-10 * ones * bnorm) {
        std::ostringstream msg;
        msg << "solve_saddle: rhs is not orthogonal to the constant pressure (sum " << psum << ")";
        throw CompatibilityError(msg.str());
    }

    std::vector<double> minv(n);
    const std::vector<double> diag = system.matrix.diagonal();
    for (std::size_t i = 0; i < pb.begin; ++i) {
        if (!(diag[i] > 0.0)) {
            throw SolverError("solve_saddle: velocity block has a non-positive diagonal");
        }
        minv[i] = 1.0 / diag[i];
    }
    for (std::size_t i = pb.begin; i < n; ++i) {
        minv[i] = 1.0 / system.pressure_weights[i];
    }
    auto precondition = [&](const std::vector<double>& r, std::vector<double>& y) {
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = minv[i] * r[i];
        }
        pb.remove_weighted_mean(y);
    };

    std::vector<double> r1 = system.rhs;
    pb.remove_mean(r1);
    std::vector<double> r2 = r1;
    std::vector<double> y(n);
    precondition(r1, y);
    const double beta1 = std::sqrt(dot(r1, y));
    if (!(beta1 > 0.0)) {
        throw SolverError("solve_saddle: preconditioner is not positive definite");
    }

    std::vector<double> v(n), w(n, 0.0), w1(n), w2(n, 0.0), tmp(n);
    double oldb = 0.0;
    double beta = beta1;
    double dbar = 0.0;
    double epsln = 0.0;
    double phibar = beta1;
    double cs = -1.0;
    double sn = 0.0;
    double check_at = tol;
    const double eps = std::numeric_limits<double>::epsilon();

    for (int itn = 1; itn <= maxit; ++itn) {
        const double s = 1.0 / beta;
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = s * y[i];
        }
        system.matrix.multiply(v, y);
        if (itn >= 2) {
            const double c = beta / oldb;
            for (std::size_t i = 0; i < n; ++i) {
                y[i] -= c * r1[i];
            }
        }
        const double alfa = dot(v, y);
        const double c = alfa / beta;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] -= c * r2[i];
        }
        pb.remove_mean(y);
        r1.swap(r2);
        r2 = y;
        precondition(r2, y);
        oldb = beta;
        const double b2 = dot(r2, y);
        beta = std::sqrt(std::max(b2, 0.0));

        const double oldeps = epsln;
        const double delta = cs * dbar + sn * alfa;
        const double gbar = sn * dbar - cs * alfa;
        epsln = sn * beta;
        dbar = -cs * beta;
        const double gamma = std::max(std::hypot(gbar, beta), eps);
        cs = gbar / gamma;
        sn = beta / gamma;
        const double phi = cs * phibar;
        phibar = sn * phibar;

        w1.swap(w2);
        w2.swap(w);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) / gamma;
            out.x[i] += phi * w[i];
        }
        out.report.iterations = itn;

        if (phibar / beta1 <= check_at || beta == 0.0) {
            out.report.relative_residual = residual_norm(system, out.x, tmp) / bnorm;
            if (out.report.relative_residual <= tol) {
                out.report.converged = true;
                break;
            }
            if (beta == 0.0) {
                break;
            }
            check_at = std::min(check_at, phibar / beta1) * 0.5;
        }
    }
    if (!out.report.converged) {
        out.report.relative_residual = residual_norm(system, out.x, tmp) / bnorm;
        out.report.converged = out.report.relative_residual <= tol;
    }
    pb.remove_weighted_mean(out.x);
    return finish();
}

std::vector<double> direct_solve_dense(const SaddleSystem& system)
{
    const std::size_t n = system.size();
    if (n > 5000) {
        throw SolverError("direct_solve_dense: system too large for the dense oracle");
    }
    if (system.matrix.rows() != n || system.matrix.cols() != n) {
        throw SolverError("direct_solve_dense: inconsistent system dimensions");
    }
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd b(dim);
    for (std::size_t i = 0; i < n; ++i) {
        b(static_cast<Eigen::Index>(i)) = system.rhs[i];
        for (std::size_t k = system.matrix.row_ptr()[i]; k < system.matrix.row_ptr()[i + 1]; ++k) {
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(system.matrix.col_idx()[k])) =
                system.matrix.values()[k];
        }
    }
    const PressureBlock pb = pressure_block(system);
    if (pb.end > pb.begin) {
        const auto pin = static_cast<Eigen::Index>(pb.end - 1);
        a.row(pin).setZero();
        a.col(pin).setZero();
        a(pin, pin) = 1.0;
        b(pin) = 0.0;
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) {
        throw SolverError("direct_solve_dense: matrix is singular beyond the pressure constant");
    }
    const Eigen::VectorXd x = lu.solve(b);
    std::vector<double> out(x.data(), x.data() + x.size());
    pb.remove_weighted_mean(out);
    return out;
}

} // namespace swg
