#include "swg/cases.hpp"

#include "swg/error.hpp"

#include <cmath>
#include <numbers>

namespace swg {

StokesCase case1()
{
    using std::cos;
    using std::sin;
    StokesCase c;
    c.name = "case1";
    c.domain = {0.0, 0.0, std::numbers::pi, std::numbers::pi};
    c.velocity = [](Point p) {
        const double sx = sin(p.x), cx = cos(p.x), sy = sin(p.y), cy = cos(p.y);
        return Vec2{sx * sx * cy * sy, -cx * sx * sy * sy};
    };
    c.gradient = [](Point p) {
        const double sx = sin(p.x), cx = cos(p.x), sy = sin(p.y), cy = cos(p.y);
        return VelocityGradient{2.0 * sx * cx * cy * sy, sx * sx * cos(2.0 * p.y),
                                -cos(2.0 * p.x) * sy * sy, -2.0 * cx * sx * sy * cy};
    };
    c.pressure = [](Point p) { return cos(p.x) * cos(p.y); };
    c.forcing = [](Point p) {
        const double sx = sin(p.x), sy = sin(p.y);
        const double f1 = -cos(2.0 * p.x) * sin(2.0 * p.y) + 2.0 * sx * sx * sin(2.0 * p.y) -
                          sx * cos(p.y);
        const double f2 = sin(2.0 * p.x) * cos(2.0 * p.y) - 2.0 * sy * sy * sin(2.0 * p.x) -
                          cos(p.x) * sy;
        return Vec2{f1, f2};
    };
    return c;
}

namespace {

double a0(double x) { return x * x * (x - 1.0) * (x - 1.0); }
double a1(double x) { return 4.0 * x * x * x - 6.0 * x * x + 2.0 * x; }
double a2(double x) { return 12.0 * x * x - 12.0 * x + 2.0; }
double b0(double y) { return y * (y - 1.0) * (2.0 * y - 1.0); }
double b1(double y) { return 6.0 * y * y - 6.0 * y + 1.0; }
double b2(double y) { return 12.0 * y - 6.0; }

} // namespace

StokesCase case2()
{
    StokesCase c;
    c.name = "case2";
    c.domain = unit_square();
    c.velocity = [](Point p) {
        return Vec2{-256.0 * a0(p.x) * b0(p.y), 256.0 * a0(p.y) * b0(p.x)};
    };
    c.gradient = [](Point p) {
        return VelocityGradient{-256.0 * a1(p.x) * b0(p.y), -256.0 * a0(p.x) * b1(p.y),
                                256.0 * a0(p.y) * b1(p.x), 256.0 * a1(p.y) * b0(p.x)};
    };
    c.pressure = [](Point p) { return 150.0 * (p.x - 0.5) * (p.y - 0.5); };
    c.forcing = [](Point p) {
        const double f1 = 256.0 * (a2(p.x) * b0(p.y) + a0(p.x) * b2(p.y)) + 150.0 * (p.y - 0.5);
        const double f2 = -256.0 * (a2(p.y) * b0(p.x) + a0(p.y) * b2(p.x)) + 150.0 * (p.x - 0.5);
        return Vec2{f1, f2};
    };
    return c;
}

StokesCase cavity()
{
    StokesCase c;
    c.name = "cavity";
    c.domain = unit_square();
    const double top = c.domain.y1;
    c.velocity = [top](Point p) {
        return std::abs(p.y - top) <= 1e-12 ? Vec2{1.0, 0.0} : Vec2{0.0, 0.0};
    };
    c.gradient = [](Point) { return VelocityGradient{}; };
    c.pressure = [](Point) { return 0.0; };
    c.forcing = [](Point) { return Vec2{0.0, 0.0}; };
    c.has_exact = false;
    return c;
}

StokesCase patch()
{
    StokesCase c;
    c.name = "patch";
    c.domain = unit_square();
    c.velocity = [](Point p) { return Vec2{p.x + p.y, p.x - p.y}; };
    c.gradient = [](Point) { return VelocityGradient{1.0, 1.0, 1.0, -1.0}; };
    c.pressure = [](Point) { return 0.0; };
    c.forcing = [](Point) { return Vec2{0.0, 0.0}; };
    return c;
}

StokesCase case_by_name(std::string_view name)
{
    if (name == "case1") {
        return case1();
    }
    if (name == "case2") {
        return case2();
    }
    if (name == "cavity") {
        return cavity();
    }
    if (name == "patch") {
        return patch();
    }
    throw ModeError("unknown case '" + std::string(name) + "'");
}

} // namespace swg
