#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "types.hpp"

namespace dri {

/// Main-problem earth model: point mass plus the second zonal harmonic.
struct GravityModel {
    double mu = 398600.4415;   ///< gravitational parameter [km^3/s^2]
    double alpha = 6378.1363;  ///< mean equatorial radius [km]
    double j2 = 1.0826267e-3;  ///< second zonal harmonic; 0 gives pure Kepler

    /// Same constants with J2 multiplied by `factor`.
    GravityModel scaled_j2(double factor) const { return {mu, alpha, j2 * factor}; }

    friend bool operator==(const GravityModel&, const GravityModel&) = default;
};

inline void validate(const GravityModel& model) {
    if (!(model.mu > 0.0) || !std::isfinite(model.mu))
        throw DomainError("gravity model: mu must be positive, got " + std::to_string(model.mu));
    if (!(model.alpha > 0.0) || !std::isfinite(model.alpha))
        throw DomainError("gravity model: alpha must be positive, got " + std::to_string(model.alpha));
    if (!(model.j2 >= 0.0) || !std::isfinite(model.j2))
        throw DomainError("gravity model: j2 must be non-negative, got " + std::to_string(model.j2));
}

constexpr double legendre_p2(double x) { return 0.5 * (3.0 * x * x - 1.0); }

/// Main-problem Hamiltonian evaluated in polar-nodal variables [km^2/s^2].
/// Independent of the node, which is cyclic.
inline double main_problem_energy(const PolarNodalState& state, const GravityModel& model) {
    if (!(state.r > 0.0)) throw DomainError("main_problem_energy: r must be positive");
    if (!(state.Theta > 0.0)) throw DomainError("main_problem_energy: Theta must be positive");
    const double c = state.N / state.Theta;
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double kinetic = 0.5 * (state.R * state.R + state.Theta * state.Theta / (state.r * state.r));
    const double zonal = model.j2 * (model.alpha * model.alpha) / (state.r * state.r) *
                         legendre_p2(s * std::sin(state.theta));
    return kinetic - model.mu / state.r * (1.0 - zonal);
}

/// Potential V(x) = -(mu/r)[1 - J2 (alpha/r)^2 P2(z/r)] [km^2/s^2].
inline double potential(const Vec3& position, const GravityModel& model) {
    const double r = norm(position);
    if (!(r > 0.0)) throw DomainError("potential: zero position vector");
    const double q = model.alpha / r;
    return -model.mu / r * (1.0 - model.j2 * q * q * legendre_p2(position[2] / r));
}

/// -grad V for the main problem [km/s^2].
inline Vec3 j2_acceleration(const Vec3& position, const GravityModel& model) {
    const double r2 = dot(position, position);
    if (!(r2 > 0.0)) throw DomainError("j2_acceleration: zero position vector");
    const double r = std::sqrt(r2);
    const double z2 = position[2] * position[2] / r2;
    const double k = 1.5 * model.j2 * model.alpha * model.alpha / r2;
    const double g = -model.mu / (r2 * r);
    const double planar = g * (1.0 - k * (5.0 * z2 - 1.0));
    const double polar = g * (1.0 - k * (5.0 * z2 - 3.0));
    return {planar * position[0], planar * position[1], polar * position[2]};
}

inline Vec3 j2_acceleration(const CartesianState& state, const GravityModel& model) {
    return j2_acceleration(state.position, model);
}

/// Specific energy 1/2|v|^2 + V of a Cartesian state.
inline double cartesian_energy(const CartesianState& state, const GravityModel& model) {
    return 0.5 * dot(state.velocity, state.velocity) + potential(state.position, model);
}

}  // namespace dri
