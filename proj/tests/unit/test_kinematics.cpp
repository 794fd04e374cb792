#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dri/kinematics.hpp"

using namespace dri;

namespace {

ClassicalElements random_elements(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ua(6700.0, 20000.0), ue(0.0, 0.6), ui(0.0, kPi), uang(0.0, kTwoPi);
    return {ua(rng), ue(rng), ui(rng), uang(rng), uang(rng), uang(rng)};
}

double angle_diff(double a, double b) { return std::remainder(a - b, kTwoPi); }

}  // namespace

TEST(ConicFunctions, RecoverElementsOfKnownOrbit) {
    const GravityModel m;
    const ClassicalElements el{7000.0, 0.05, 55.0 * kDeg, 10.0 * kDeg, 0.0, 15.0 * kDeg};
    const auto s = classical_to_polar_nodal(el, m);
    const auto cf = conic_functions(s, m);
    EXPECT_NEAR(cf.p, el.a * (1.0 - el.e * el.e), 1e-9);
    EXPECT_NEAR(cf.kappa, el.e * std::cos(el.f), 1e-14);
    EXPECT_NEAR(cf.sigma, el.e * std::sin(el.f), 1e-14);
    EXPECT_NEAR(cf.ecc, el.e, 1e-14);
    EXPECT_NEAR(cf.ecosw, el.e * std::cos(el.omega), 1e-14);
    EXPECT_NEAR(cf.esinw, el.e * std::sin(el.omega), 1e-14);
}

TEST(ConicFunctions, EccentricityIdentity) {
    const GravityModel m;
    std::mt19937_64 rng(3);
    for (int k = 0; k < 500; ++k) {
        const auto el = random_elements(rng);
        const auto cf = conic_functions(classical_to_polar_nodal(el, m), m);
        EXPECT_NEAR(cf.kappa * cf.kappa + cf.sigma * cf.sigma, el.e * el.e, 1e-13);
        EXPECT_NEAR(cf.ecosw * cf.ecosw + cf.esinw * cf.esinw, el.e * el.e, 1e-13);
    }
}

TEST(Kinematics, CartesianRoundTrip) {
    const GravityModel m;
    std::mt19937_64 rng(5);
    for (int k = 0; k < 1000; ++k) {
        auto el = random_elements(rng);
        el.i = 0.01 + (kPi - 0.02) * el.i / kPi;
        const auto s = classical_to_polar_nodal(el, m);
        const auto back = cartesian_to_polar_nodal(polar_nodal_to_cartesian(s));
        EXPECT_NEAR(back.r, s.r, 1e-12 * s.r);
        EXPECT_NEAR(back.R, s.R, 1e-12);
        EXPECT_NEAR(back.Theta, s.Theta, 1e-12 * s.Theta);
        EXPECT_NEAR(back.N, s.N, 1e-11 * s.Theta);
        EXPECT_NEAR(angle_diff(back.theta, s.theta), 0.0, 1e-11);
        EXPECT_NEAR(angle_diff(back.nu, s.nu), 0.0, 1e-11);
    }
}

TEST(Kinematics, AngularMomentumIdentity) {
    const GravityModel m;
    std::mt19937_64 rng(9);
    for (int k = 0; k < 500; ++k) {
        const auto s = classical_to_polar_nodal(random_elements(rng), m);
        const auto x = polar_nodal_to_cartesian(s);
        const Vec3 h = cross(x.position, x.velocity);
        EXPECT_NEAR(norm(h), s.Theta, 1e-11 * s.Theta);
        EXPECT_NEAR(h[2], s.N, 1e-11 * s.Theta);
        EXPECT_NEAR(dot(x.position, x.velocity) / norm(x.position), s.R, 1e-12);
        EXPECT_NEAR(norm(x.velocity), speed(s), 1e-12);
    }
}

TEST(Kinematics, EquatorialConvention) {
    const GravityModel m;
    const ClassicalElements el{7000.0, 0.01, 0.0, 0.4, 0.7, 0.2};
    const auto s = classical_to_polar_nodal(el, m);
    const auto back = cartesian_to_polar_nodal(polar_nodal_to_cartesian(s));
    EXPECT_EQ(back.nu, 0.0);
    EXPECT_NEAR(angle_diff(back.theta, el.omega + el.Omega + el.f), 0.0, 1e-12);

    const ClassicalElements retro{7000.0, 0.01, kPi, 0.4, 0.7, 0.2};
    const auto sr = classical_to_polar_nodal(retro, m);
    const auto xr = polar_nodal_to_cartesian(sr);
    const auto br = cartesian_to_polar_nodal(xr);
    EXPECT_EQ(br.nu, 0.0);
    EXPECT_LT(br.N, 0.0);
    const auto again = polar_nodal_to_cartesian(br);
    for (int j = 0; j < 3; ++j) {
        EXPECT_NEAR(again.position[j], xr.position[j], 1e-9);
        EXPECT_NEAR(again.velocity[j], xr.velocity[j], 1e-12);
    }
}

TEST(Kinematics, DegenerateInputsThrow) {
    EXPECT_THROW(cartesian_to_polar_nodal({{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}), DegenerateGeometryError);
    EXPECT_THROW(cartesian_to_polar_nodal({{7000.0, 0.0, 0.0}, {2.0, 0.0, 0.0}}), DegenerateGeometryError);
    const GravityModel m;
    EXPECT_THROW(classical_to_polar_nodal({7000.0, 1.0, 0.0, 0.0, 0.0, 0.0}, m), DomainError);
    EXPECT_THROW(classical_to_polar_nodal({-1.0, 0.1, 0.0, 0.0, 0.0, 0.0}, m), DomainError);
    EXPECT_THROW(validate(PolarNodalState{7000.0, 0.0, 0.0, 0.0, 1.0, 2.0}), DomainError);
}
