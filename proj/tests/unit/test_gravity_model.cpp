#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dri/gravity_model.hpp"
#include "dri/kinematics.hpp"

using namespace dri;

TEST(Legendre, KnownValues) {
    EXPECT_DOUBLE_EQ(legendre_p2(0.0), -0.5);
    EXPECT_DOUBLE_EQ(legendre_p2(1.0), 1.0);
    EXPECT_DOUBLE_EQ(legendre_p2(-1.0), 1.0);
    EXPECT_DOUBLE_EQ(legendre_p2(0.5), -0.125);
}

TEST(MainProblemEnergy, CircularEquatorial) {
    const GravityModel m;
    const double r = 7000.0;
    const double Theta = std::sqrt(m.mu * r);
    const PolarNodalState s{r, 0.3, 1.1, 0.0, Theta, Theta};
    const double expected = -m.mu / (2.0 * r) - m.mu * m.j2 * m.alpha * m.alpha / (2.0 * r * r * r);
    EXPECT_NEAR(main_problem_energy(s, m), expected, 1e-14 * std::abs(expected));
}

TEST(MainProblemEnergy, PolarOverPole) {
    const GravityModel m;
    const double r = 7000.0;
    const double Theta = std::sqrt(m.mu * r);
    const PolarNodalState s{r, kPi / 2, 0.0, 0.0, Theta, 0.0};
    const double expected = -m.mu / (2.0 * r) + m.mu * m.j2 * m.alpha * m.alpha / (r * r * r);
    EXPECT_NEAR(main_problem_energy(s, m), expected, 1e-14 * std::abs(expected));
}

TEST(MainProblemEnergy, MatchesCartesianEvaluation) {
    const GravityModel m;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ur(6600.0, 9000.0), uang(-kPi, kPi), uc(-1.0, 1.0), uR(-1.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double r = ur(rng);
        const double Theta = std::sqrt(m.mu * r) * (0.9 + 0.2 * std::abs(uc(rng)));
        const PolarNodalState s{r, uang(rng), uang(rng), uR(rng), Theta, Theta * uc(rng)};
        const double h = main_problem_energy(s, m);
        EXPECT_NEAR(h, cartesian_energy(polar_nodal_to_cartesian(s), m), 1e-13 * std::abs(h));
    }
}

TEST(MainProblemEnergy, NodeIsCyclic) {
    const GravityModel m;
    PolarNodalState s{7100.0, 0.8, 0.0, 0.1, 53000.0, 30000.0};
    const double h0 = main_problem_energy(s, m);
    for (double nu : {0.5, 2.0, -3.0, 100.0}) {
        s.nu = nu;
        EXPECT_EQ(main_problem_energy(s, m), h0);
    }
}

TEST(MainProblemEnergy, RejectsNonPhysicalState) {
    const GravityModel m;
    EXPECT_THROW(main_problem_energy({0.0, 0.0, 0.0, 0.0, 1.0, 0.0}, m), DomainError);
    EXPECT_THROW(main_problem_energy({7000.0, 0.0, 0.0, 0.0, 0.0, 0.0}, m), DomainError);
}

TEST(Acceleration, MatchesPotentialGradient) {
    const GravityModel m;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0), ur(6500.0, 12000.0);
    for (int k = 0; k < 1000; ++k) {
        Vec3 dir{u(rng), u(rng), u(rng)};
        if (norm(dir) < 1e-3) continue;
        const Vec3 x = (ur(rng) / norm(dir)) * dir;
        const Vec3 a = j2_acceleration(x, m);
        const double h = 1.0;
        for (int j = 0; j < 3; ++j) {
            auto at = [&](double step) {
                Vec3 y = x;
                y[j] += step;
                return potential(y, m);
            };
            const double grad = (8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12.0 * h);
            EXPECT_NEAR(a[j], -grad, 1e-9 * norm(a));
        }
    }
}

TEST(Acceleration, KeplerWhenJ2Vanishes) {
    const GravityModel m{398600.4415, 6378.1363, 0.0};
    const Vec3 x{3000.0, -4000.0, 5000.0};
    const Vec3 a = j2_acceleration(x, m);
    const double r = norm(x);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(a[j], -m.mu * x[j] / (r * r * r), 1e-18);
}

TEST(GravityModel, ValidationAndScaling) {
    EXPECT_NO_THROW(validate(GravityModel{}));
    EXPECT_THROW(validate(GravityModel{-1.0, 6378.0, 1e-3}), DomainError);
    EXPECT_THROW(validate(GravityModel{1.0, 0.0, 1e-3}), DomainError);
    EXPECT_THROW(validate(GravityModel{1.0, 1.0, -1e-3}), DomainError);
    EXPECT_DOUBLE_EQ(GravityModel{}.scaled_j2(0.5).j2, 0.5 * GravityModel{}.j2);
}
