#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "gravity_model.hpp"
#include "types.hpp"

namespace dri {

/// Conic auxiliary functions of a polar-nodal state.
struct ConicFunctions {
    double kappa = 0.0;  ///< e cos f
    double sigma = 0.0;  ///< e sin f
    double p = 0.0;      ///< semilatus rectum [km]
    double ecc = 0.0;    ///< osculating eccentricity
    double ecosw = 0.0;  ///< e cos(omega)
    double esinw = 0.0;  ///< e sin(omega)
};

inline ConicFunctions conic_functions(const PolarNodalState& state, const GravityModel& model) {
    ConicFunctions out;
    out.p = state.Theta * state.Theta / model.mu;
    out.kappa = out.p / state.r - 1.0;
    out.sigma = out.p * state.R / state.Theta;
    out.ecc = std::hypot(out.kappa, out.sigma);
    const double ct = std::cos(state.theta);
    const double st = std::sin(state.theta);
    out.ecosw = out.kappa * ct + out.sigma * st;
    out.esinw = out.kappa * st - out.sigma * ct;
    return out;
}

inline void validate(const ClassicalElements& el) {
    if (!(el.a > 0.0)) throw DomainError("classical elements: a must be positive");
    if (!(el.e >= 0.0 && el.e < 1.0))
        throw DomainError("classical elements: eccentricity must be in [0, 1), got " + std::to_string(el.e));
    if (!(el.i >= 0.0 && el.i <= kPi)) throw DomainError("classical elements: inclination must be in [0, pi]");
}

inline void validate(const PolarNodalState& state) {
    if (!(state.r > 0.0)) throw DomainError("polar-nodal state: r must be positive");
    if (!(state.Theta > 0.0)) throw DomainError("polar-nodal state: Theta must be positive");
    if (std::abs(state.N) > state.Theta * (1.0 + 1e-15))
        throw DomainError("polar-nodal state: |N| exceeds Theta");
}

inline PolarNodalState classical_to_polar_nodal(const ClassicalElements& el, const GravityModel& model) {
    validate(el);
    const double p = el.a * (1.0 - el.e * el.e);
    const double Theta = std::sqrt(model.mu * p);
    PolarNodalState s;
    s.r = p / (1.0 + el.e * std::cos(el.f));
    s.R = model.mu / Theta * el.e * std::sin(el.f);
    s.theta = el.omega + el.f;
    s.nu = el.Omega;
    s.Theta = Theta;
    s.N = Theta * std::cos(el.i);
    return s;
}

/// Cosine and sine of the inclination, with |c| clamped to 1.
struct InclinationCosines {
    double c;
    double s;
};

inline InclinationCosines inclination_cosines(const PolarNodalState& state) {
    const double c = std::clamp(state.N / state.Theta, -1.0, 1.0);
    return {c, std::sqrt((1.0 - c) * (1.0 + c))};
}

inline CartesianState polar_nodal_to_cartesian(const PolarNodalState& state) {
    const auto [c, s] = inclination_cosines(state);
    const double cn = std::cos(state.nu), sn = std::sin(state.nu);
    const double ct = std::cos(state.theta), st = std::sin(state.theta);

    const Vec3 radial{cn * ct - sn * st * c, sn * ct + cn * st * c, st * s};
    const Vec3 transverse{-cn * st - sn * ct * c, -sn * st + cn * ct * c, ct * s};
    const double vt = state.Theta / state.r;

    CartesianState out;
    out.position = state.r * radial;
    out.velocity = state.R * radial + vt * transverse;
    return out;
}

/// Inverse of polar_nodal_to_cartesian.
///
/// Equatorial orbits have no node; there `nu` is set to 0 and `theta`
/// carries the whole in-plane angle.
inline PolarNodalState cartesian_to_polar_nodal(const CartesianState& state) {
    const Vec3& x = state.position;
    const Vec3& v = state.velocity;
    const double r = norm(x);
    if (!(r > 0.0)) throw DegenerateGeometryError("cartesian_to_polar_nodal: zero position vector");
    const Vec3 h = cross(x, v);
    const double Theta = norm(h);
    if (!(Theta > 1e-14 * r * norm(v)))
        throw DegenerateGeometryError("cartesian_to_polar_nodal: rectilinear motion has no orbital plane");

    PolarNodalState out;
    out.r = r;
    out.R = dot(x, v) / r;
    out.Theta = Theta;
    out.N = h[2];

    const double node_norm = std::hypot(h[0], h[1]);
    if (node_norm <= 1e-15 * Theta) {
        const double c = h[2] > 0.0 ? 1.0 : -1.0;
        out.nu = 0.0;
        out.theta = std::atan2(c * x[1], x[0]);
        return out;
    }
    out.nu = std::atan2(h[0], -h[1]);
    const double s = node_norm / Theta;
    out.theta = std::atan2(x[2] / s, x[0] * std::cos(out.nu) + x[1] * std::sin(out.nu));
    return out;
}

inline double speed(const PolarNodalState& state) { return std::hypot(state.R, state.Theta / state.r); }

}  // namespace dri
