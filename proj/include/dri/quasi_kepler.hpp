#pragma once

#include <cmath>
#include <string>

#include "errors.hpp"
#include "gravity_model.hpp"
#include "kinematics.hpp"
#include "types.hpp"

namespace dri {

/// Constants of the quasi-Keplerian flow, frozen at epoch. All quantities
/// belong to the prime (parallax-free) variable set.
struct QuasiKeplerianElements {
    double c = 0.0;           ///< N / Theta
    double eps = 0.0;         ///< -J2 (alpha/p)^2 / 4
    double ThetaTilde = 0.0;  ///< modified angular momentum [km^2/s]
    double zeta = 1.0;        ///< d(theta)/d(f)
    double chi = 0.0;         ///< d(nu)/d(f)
    double pTilde = 0.0;      ///< ThetaTilde^2 / mu [km]
    double a = 0.0;           ///< [km]
    double e = 0.0;
    double f0 = 0.0;
    double u0 = 0.0;
    double l0 = 0.0;
    double theta0 = 0.0;
    double nu0 = 0.0;
    double Theta = 0.0;
    double N = 0.0;
    double mean_motion = 0.0;  ///< [rad/s]
    double mu = 0.0;           ///< copied from the model the elements were built with
};

/// Below this eccentricity the anomalies are treated as indistinct.
inline constexpr double kCircularEccentricityFloor = 1e-9;

inline QuasiKeplerianElements build_elements(const PolarNodalState& prime, const GravityModel& model) {
    validate(prime);
    QuasiKeplerianElements el;
    const double mu = model.mu;
    el.mu = mu;
    el.Theta = prime.Theta;
    el.N = prime.N;
    el.theta0 = prime.theta;
    el.nu0 = prime.nu;

    const double c = prime.N / prime.Theta;
    const double c2 = c * c;
    const double p = prime.Theta * prime.Theta / mu;
    const double eps = -0.25 * model.j2 * (model.alpha * model.alpha) / (p * p);
    el.c = c;
    el.eps = eps;
    el.ThetaTilde = prime.Theta * std::sqrt(1.0 - (2.0 - 6.0 * c2) * eps + (1.0 - 21.0 * c2 * c2) * eps * eps);
    el.zeta = prime.Theta / el.ThetaTilde *
              (1.0 + (2.0 - 12.0 * c2) * eps - (3.0 - 105.0 * c2 * c2) * eps * eps);
    el.chi = 6.0 * eps * (1.0 - 7.0 * eps * c2) * prime.N / el.ThetaTilde;
    el.pTilde = el.ThetaTilde * el.ThetaTilde / mu;

    const double r0 = prime.r;
    const double R0 = prime.R;
    const double twice_energy = R0 * R0 + el.ThetaTilde * el.ThetaTilde / (r0 * r0) - 2.0 * mu / r0;
    if (!(twice_energy < 0.0))
        throw ImpactError("build_elements: unbound prime trajectory (a <= 0)");
    const double ecosf = el.pTilde / r0 - 1.0;
    const double esinf = R0 * std::sqrt(el.pTilde / mu);
    el.e = std::hypot(ecosf, esinf);
    if (!(el.e < 1.0)) throw ImpactError("build_elements: eccentricity >= 1");
    el.a = el.pTilde / ((1.0 - el.e) * (1.0 + el.e));
    el.mean_motion = std::sqrt(mu / (el.a * el.a * el.a));

    if (el.e < kCircularEccentricityFloor) {
        el.e = 0.0;
        el.f0 = el.u0 = el.l0 = 0.0;
        return el;
    }
    el.f0 = std::atan2(esinf, ecosf);
    const double half = 0.5 * el.f0;
    el.u0 = 2.0 * std::atan2(std::sqrt(1.0 - el.e) * std::sin(half), std::sqrt(1.0 + el.e) * std::cos(half));
    el.l0 = el.u0 - el.e * std::sin(el.u0);
    return el;
}

namespace detail {

// u - e sin u - M on the reduced anomaly.
inline double kepler_residual(double u, double e, double M) { return (u - M) - e * std::sin(u); }

inline double solve_kepler_reduced(double M, double e) {
    double u = M + e * std::sin(M);
    for (int iter = 0; iter < 50; ++iter) {
        const double du = kepler_residual(u, e, M) / (1.0 - e * std::cos(u));
        u -= du;
        if (std::abs(du) <= 1e-15) break;
    }
    if (std::abs(kepler_residual(u, e, M)) < 1e-15) return u;

    // Newton stalled; the root is bracketed by [M - e, M + e].
    double lo = M - e, hi = M + e;
    for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (kepler_residual(mid, e, M) < 0.0 ? lo : hi) = mid;
    }
    u = 0.5 * (lo + hi);
    if (!(std::abs(kepler_residual(u, e, M)) < 1e-14))
        throw ConvergenceError("solve_kepler: no convergence for M=" + std::to_string(M) +
                               " e=" + std::to_string(e));
    return u;
}

}  // namespace detail

/// Anomalies at one instant, unwrapped onto the revolution of the mean anomaly.
struct Anomalies {
    double l = 0.0;  ///< mean
    double u = 0.0;  ///< eccentric
    double f = 0.0;  ///< true
};

inline Anomalies anomalies_from_mean(double l, double e) {
    if (!(e >= 0.0 && e < 1.0)) throw DomainError("solve_kepler: eccentricity must be in [0, 1)");
    const double revs = std::round(l / kTwoPi);
    const double base = revs * kTwoPi;
    const double M = l - base;
    if (e == 0.0) return {l, l, l};
    const double u = detail::solve_kepler_reduced(M, e);
    const double half = 0.5 * u;
    const double f = 2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(half), std::sqrt(1.0 - e) * std::cos(half));
    return {l, base + u, base + f};
}

/// Solves l = u - e sin u; the result lies on the same revolution as `l`.
inline double solve_kepler(double l, double e) { return anomalies_from_mean(l, e).u; }

struct PrimeSample {
    PolarNodalState state;
    Anomalies anomalies;
};

inline PrimeSample propagate_prime_detailed(const QuasiKeplerianElements& el, double t) {
    const Anomalies an = anomalies_from_mean(el.l0 + el.mean_motion * t, el.e);
    const double df = an.f - el.f0;
    PrimeSample out;
    out.anomalies = an;
    out.state.r = el.a * (1.0 - el.e * std::cos(an.u));
    out.state.theta = el.theta0 + el.zeta * df;
    out.state.nu = el.nu0 + el.chi * df;
    out.state.R = el.mu / el.ThetaTilde * el.e * std::sin(an.f);
    out.state.Theta = el.Theta;
    out.state.N = el.N;
    return out;
}

/// Prime-space state at elapsed time `t` [s] from the element epoch.
inline PolarNodalState propagate_prime(const QuasiKeplerianElements& el, double t) {
    return propagate_prime_detailed(el, t).state;
}

/// Quasi-Keplerian Hamiltonian 1/2 (R^2 + ThetaTilde^2/r^2) - mu/r.
inline double quasi_kepler_energy(const PolarNodalState& prime, const QuasiKeplerianElements& el) {
    return 0.5 * (prime.R * prime.R + el.ThetaTilde * el.ThetaTilde / (prime.r * prime.r)) - el.mu / prime.r;
}

}  // namespace dri
