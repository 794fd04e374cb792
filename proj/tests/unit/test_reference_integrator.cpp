#include <gtest/gtest.h>

#include <cmath>

#include "dri/reference_integrator.hpp"
#include "dri/kinematics.hpp"
#include "dri/propagator.hpp"

using namespace dri;

namespace {

CartesianState leo_state(double e, double i_deg, const GravityModel& m) {
    return polar_nodal_to_cartesian(
        classical_to_polar_nodal({7000.0, e, i_deg * kDeg, 10.0 * kDeg, 0.0, 15.0 * kDeg}, m));
}

}  // namespace

TEST(ReferenceIntegrator, CircularKeplerOrbitIsExact) {
    const GravityModel m{398600.4415, 6378.1363, 0.0};
    const double r = 7000.0, n = std::sqrt(m.mu / (r * r * r));
    const CartesianState x0{{r, 0.0, 0.0}, {0.0, n * r, 0.0}};
    const auto grid = uniform_grid(kSecondsPerDay, 600.0);
    IntegratorConfig extended;
    extended.rel_tol = extended.abs_tol = 1e-16;
    extended.extended_precision = true;
    const auto out = integrate(x0, m, grid, {});
    const auto fine = integrate(x0, m, grid, extended);
    ASSERT_EQ(out.size(), grid.size());
    ASSERT_EQ(fine.size(), grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Vec3 expected{r * std::cos(n * grid[k]), r * std::sin(n * grid[k]), 0.0};
        EXPECT_LT(norm(out[k].position - expected), 5e-6);
        EXPECT_LT(norm(fine[k].position - expected), 1e-8);
    }
}

TEST(ReferenceIntegrator, EnergyIsConserved) {
    const GravityModel m;
    const auto x0 = leo_state(0.075, 55.0, m);
    const auto out = integrate(x0, m, uniform_grid(7.0 * kSecondsPerDay, 3600.0), {});
    const double e0 = cartesian_energy(x0, m);
    for (const auto& s : out) EXPECT_LT(std::abs(cartesian_energy(s, m) - e0) / std::abs(e0), 1e-10);
}

TEST(ReferenceIntegrator, PolarMomentumIsConserved) {
    const GravityModel m;
    const auto x0 = leo_state(0.005, 89.0, m);
    const double hz = cross(x0.position, x0.velocity)[2];
    for (const auto& s : integrate(x0, m, uniform_grid(2.0 * kSecondsPerDay, 3600.0), {}))
        EXPECT_NEAR(cross(s.position, s.velocity)[2], hz, 1e-9 * std::abs(hz) + 1e-9);
}

TEST(ReferenceIntegrator, ForwardThenBackwardReturnsHome) {
    const GravityModel m;
    const auto x0 = leo_state(0.05, 30.0, m);
    const double T = 2.0 * kSecondsPerDay;
    const auto forward = integrate(x0, m, std::vector<double>{0.0, T}, {});
    const auto back = integrate(forward.back(), m, std::vector<double>{T, 0.0}, {});
    EXPECT_LT(norm(back.back().position - x0.position), 1e-4);
    EXPECT_LT(norm(back.back().velocity - x0.velocity), 1e-7);
}

TEST(ReferenceIntegrator, ConvergesWithTolerance) {
    const GravityModel m;
    const auto x0 = leo_state(0.075, 55.0, m);
    const std::vector<double> grid{0.0, 3.0 * kSecondsPerDay};
    IntegratorConfig loose, tight, tighter;
    loose.rel_tol = loose.abs_tol = 1e-9;
    tight.rel_tol = tight.abs_tol = 1e-12;
    tighter.rel_tol = tighter.abs_tol = 1e-14;
    tighter.max_step = 60.0;
    const auto a = integrate(x0, m, grid, loose).back();
    const auto b = integrate(x0, m, grid, tight).back();
    const auto c = integrate(x0, m, grid, tighter).back();
    EXPECT_LT(norm(b.position - c.position), 1e-4);
    EXPECT_LT(norm(b.position - c.position), norm(a.position - c.position));
}

TEST(ReferenceIntegrator, LandsExactlyOnGridAndRejectsBadGrids) {
    const GravityModel m;
    const auto x0 = leo_state(0.005, 55.0, m);
    const auto one = integrate(x0, m, std::vector<double>{0.0}, {});
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].position, x0.position);
    EXPECT_THROW(integrate(x0, m, std::vector<double>{0.0, 10.0, 5.0}, {}), DomainError);
    IntegratorConfig bad;
    bad.rel_tol = -1.0;
    EXPECT_THROW(integrate(x0, m, std::vector<double>{0.0, 10.0}, bad), DomainError);
}

TEST(ReferenceIntegrator, SurfaceImpactIsReported) {
    const GravityModel m;
    const double r = 6500.0;
    const CartesianState falling{{r, 0.0, 0.0}, {-1.0, 0.5 * std::sqrt(m.mu / r), 0.0}};
    EXPECT_THROW(integrate(falling, m, std::vector<double>{0.0, 3600.0}, {}), ImpactError);
    IntegratorConfig through;
    through.stop_at_surface = false;
    EXPECT_NO_THROW(integrate(leo_state(0.1, 5.0, m), m, std::vector<double>{0.0, 7200.0}, through));
}
