#include "swg/cases.hpp"
#include "swg/error.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace swg;

namespace {

constexpr double kStep = 1e-5;

// Central differences of the velocity against the hand-coded gradient.
void check_gradient(const StokesCase& c, Point p)
{
    const Vec2 xp = c.velocity({p.x + kStep, p.y});
    const Vec2 xm = c.velocity({p.x - kStep, p.y});
    const Vec2 yp = c.velocity({p.x, p.y + kStep});
    const Vec2 ym = c.velocity({p.x, p.y - kStep});
    const VelocityGradient g = c.gradient(p);
    const double scale = std::max({1.0, std::abs(g.ux), std::abs(g.uy), std::abs(g.vx), std::abs(g.vy)});
    EXPECT_NEAR((xp.x - xm.x) / (2 * kStep), g.ux, 1e-6 * scale);
    EXPECT_NEAR((yp.x - ym.x) / (2 * kStep), g.uy, 1e-6 * scale);
    EXPECT_NEAR((xp.y - xm.y) / (2 * kStep), g.vx, 1e-6 * scale);
    EXPECT_NEAR((yp.y - ym.y) / (2 * kStep), g.vy, 1e-6 * scale);
    EXPECT_NEAR(g.ux + g.vy, 0.0, 1e-12 * scale);
}

// f = -Lap u + grad p, with the Laplacian from differences of the gradient.
void check_forcing(const StokesCase& c, Point p)
{
    const VelocityGradient gxp = c.gradient({p.x + kStep, p.y});
    const VelocityGradient gxm = c.gradient({p.x - kStep, p.y});
    const VelocityGradient gyp = c.gradient({p.x, p.y + kStep});
    const VelocityGradient gym = c.gradient({p.x, p.y - kStep});
    const double lap_u = (gxp.ux - gxm.ux + gyp.uy - gym.uy) / (2 * kStep);
    const double lap_v = (gxp.vx - gxm.vx + gyp.vy - gym.vy) / (2 * kStep);
    const double px = (c.pressure({p.x + kStep, p.y}) - c.pressure({p.x - kStep, p.y})) / (2 * kStep);
    const double py = (c.pressure({p.x, p.y + kStep}) - c.pressure({p.x, p.y - kStep})) / (2 * kStep);
    const Vec2 f = c.forcing(p);
    const double scale = std::max({1.0, std::abs(f.x), std::abs(f.y)});
    EXPECT_NEAR(-lap_u + px, f.x, 1e-6 * scale) << p.x << "," << p.y;
    EXPECT_NEAR(-lap_v + py, f.y, 1e-6 * scale) << p.x << "," << p.y;
}

void check_case(const StokesCase& c)
{
    SplitMix64 rng(2024);
    for (int k = 0; k < 200; ++k) {
        const Point p{c.domain.x0 + c.domain.width() * rng.uniform(),
                      c.domain.y0 + c.domain.height() * rng.uniform()};
        check_gradient(c, p);
        check_forcing(c, p);
    }
}

double boundary_max(const StokesCase& c)
{
    double m = 0.0;
    for (int k = 0; k <= 100; ++k) {
        const double t = k / 100.0;
        const double x = c.domain.x0 + t * c.domain.width();
        const double y = c.domain.y0 + t * c.domain.height();
        for (Point p : {Point{x, c.domain.y0}, Point{x, c.domain.y1}, Point{c.domain.x0, y},
                        Point{c.domain.x1, y}}) {
            const Vec2 u = c.velocity(p);
            m = std::max({m, std::abs(u.x), std::abs(u.y)});
        }
    }
    return m;
}

} // namespace

TEST(Cases, CaseOneForcing)
{
    check_case(case1());
    EXPECT_LE(boundary_max(case1()), 1e-15);
}

TEST(Cases, CaseTwoForcing)
{
    check_case(case2());
    EXPECT_LE(boundary_max(case2()), 1e-12);
}

TEST(Cases, PatchIsLinearAndDivergenceFree)
{
    check_case(patch());
    const Vec2 u = patch().velocity({0.3, 0.9});
    EXPECT_DOUBLE_EQ(u.x, 1.2);
    EXPECT_DOUBLE_EQ(u.y, -0.6);
}

TEST(Cases, CavityLid)
{
    const StokesCase c = cavity();
    EXPECT_FALSE(c.has_exact);
    EXPECT_EQ(c.velocity({0.5, 1.0}).x, 1.0);
    EXPECT_EQ(c.velocity({0.5, 0.0}).x, 0.0);
    EXPECT_EQ(c.velocity({1.0, 0.5}).x, 0.0);
}

TEST(Cases, LookupByName)
{
    EXPECT_EQ(case_by_name("case1").name, "case1");
    EXPECT_EQ(case_by_name("cavity").name, "cavity");
    EXPECT_THROW(case_by_name("case3"), ModeError);
}
