#pragma once

#include "swg/assembly.hpp"
#include "swg/mesh.hpp"

#include <functional>
#include <string>
#include <string_view>

namespace swg {

/// Velocity Jacobian: (du/dx, du/dy, dv/dx, dv/dy).
struct VelocityGradient {
    double ux = 0.0;
    double uy = 0.0;
    double vx = 0.0;
    double vy = 0.0;
};

/// Stokes problem -Lap u + grad p = f, div u = 0 with Dirichlet data taken
/// from `velocity`. Cases without a closed-form solution (the cavity) have
/// `has_exact` false; their `velocity` is the boundary data only.
struct StokesCase {
    std::string name;
    Rect domain;
    VectorField velocity;
    std::function<VelocityGradient(Point)> gradient;
    ScalarField pressure;
    VectorField forcing;
    bool has_exact = true;
};

/// u = sin^2 x cos y sin y, v = -cos x sin x sin^2 y, p = cos x cos y on (0,pi)^2.
StokesCase case1();

/// u = -256 x^2(x-1)^2 y(y-1)(2y-1), v = -u(y,x), p = 150(x-1/2)(y-1/2) on (0,1)^2.
StokesCase case2();

/// Lid-driven cavity on (0,1)^2: f = 0, u = (1,0) on y = 1, zero elsewhere.
StokesCase cavity();

/// Linear divergence-free flow u = (x+y, x-y), p = 0, f = 0 on (0,1)^2.
StokesCase patch();

/// Looks a case up by name: case1, case2, cavity, patch.
StokesCase case_by_name(std::string_view name);

} // namespace swg
