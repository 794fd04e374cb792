#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <boost/numeric/odeint/integrate/integrate_times.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "errors.hpp"
#include "gravity_model.hpp"
#include "types.hpp"

namespace dri {

struct IntegratorConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-12;  ///< km and km/s
    double max_step = 600.0; ///< [s]; 0 leaves the step unbounded
    /// Raise ImpactError when r <= alpha. Disabling it integrates the main
    /// problem as a purely mathematical field, valid for any r > 0.
    bool stop_at_surface = true;
    /// Carry the state and field evaluation in long double.
    bool extended_precision = false;

    friend bool operator==(const IntegratorConfig&, const IntegratorConfig&) = default;
};

inline void validate(const IntegratorConfig& cfg) {
    auto in_range = [](double tol) { return tol > 0.0 && tol < 1e-3; };
    if (!in_range(cfg.rel_tol) || !in_range(cfg.abs_tol))
        throw DomainError("integrator tolerances must lie in (0, 1e-3)");
    if (!(cfg.max_step >= 0.0)) throw DomainError("integrator max_step must be non-negative");
}

namespace detail {

template <typename Real>
using OdeState = std::array<Real, 6>;

template <typename Real>
OdeState<Real> to_ode(const CartesianState& s) {
    return {s.position[0], s.position[1], s.position[2], s.velocity[0], s.velocity[1], s.velocity[2]};
}

template <typename Real>
CartesianState from_ode(const OdeState<Real>& x) {
    return {{double(x[0]), double(x[1]), double(x[2])}, {double(x[3]), double(x[4]), double(x[5])}};
}

template <typename Real>
struct MainProblemField {
    GravityModel model;
    bool stop_at_surface = true;

    void operator()(const OdeState<Real>& x, OdeState<Real>& dxdt, Real t) const {
        using std::sqrt;
        const Real r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        if (stop_at_surface && !(r2 > Real(model.alpha) * Real(model.alpha)))
            throw ImpactError("reference integrator: surface impact at t=" + std::to_string(double(t)) + " s");
        if (!(r2 > 0)) throw DomainError("reference integrator: zero position vector");
        const Real r = sqrt(r2);
        const Real z2 = x[2] * x[2] / r2;
        const Real k = Real(1.5) * Real(model.j2) * Real(model.alpha) * Real(model.alpha) / r2;
        const Real g = -Real(model.mu) / (r2 * r);
        const Real planar = g * (1 - k * (5 * z2 - 1));
        const Real polar = g * (1 - k * (5 * z2 - 3));
        dxdt = {x[3], x[4], x[5], planar * x[0], planar * x[1], polar * x[2]};
    }
};

template <typename Real>
void integrate_with(const CartesianState& initial, const GravityModel& model, std::span<const double> t_grid,
                    const IntegratorConfig& cfg, std::vector<CartesianState>& out) {
    namespace odeint = boost::numeric::odeint;
    const Real dt0 = t_grid.size() > 1 ? (t_grid[1] > t_grid[0] ? Real(1) : Real(-1)) : Real(1);
    // The step limit carries the direction of integration.
    auto stepper = odeint::make_controlled(Real(cfg.abs_tol), Real(cfg.rel_tol), dt0 * Real(cfg.max_step),
                                           odeint::runge_kutta_fehlberg78<OdeState<Real>, Real>());
    OdeState<Real> x = to_ode<Real>(initial);
    std::vector<Real> times(t_grid.begin(), t_grid.end());
    try {
        odeint::integrate_times(stepper, MainProblemField<Real>{model, cfg.stop_at_surface}, x, times.begin(),
                                times.end(), dt0,
                                [&out](const OdeState<Real>& s, Real) { out.push_back(from_ode<Real>(s)); });
    } catch (const odeint::step_adjustment_error& e) {
        throw ConvergenceError(std::string("reference integrator: step size underflow: ") + e.what());
    } catch (const odeint::no_progress_error& e) {
        throw ConvergenceError(std::string("reference integrator: no progress: ") + e.what());
    }
}

}  // namespace detail

/// Numerically integrates the main problem in Cartesian coordinates with an
/// adaptive Runge-Kutta-Fehlberg 7(8) pair.
///
/// `initial` is the state at `t_grid.front()`; the grid must be strictly
/// monotonic (decreasing grids integrate backwards). The stepper lands on
/// every grid time exactly, so samples carry the full local-error control.
inline std::vector<CartesianState> integrate(const CartesianState& initial, const GravityModel& model,
                                             std::span<const double> t_grid, const IntegratorConfig& cfg = {}) {
    validate(model);
    validate(cfg);
    std::vector<CartesianState> out;
    if (t_grid.empty()) return out;
    if (t_grid.size() > 1) {
        const bool forward = t_grid[1] > t_grid[0];
        for (std::size_t k = 1; k < t_grid.size(); ++k) {
            if (forward ? !(t_grid[k] > t_grid[k - 1]) : !(t_grid[k] < t_grid[k - 1]))
                throw DomainError("integrate: time grid must be strictly monotonic");
        }
    }
    out.reserve(t_grid.size());
    if (cfg.extended_precision)
        detail::integrate_with<long double>(initial, model, t_grid, cfg, out);
    else
        detail::integrate_with<double>(initial, model, t_grid, cfg, out);
    return out;
}

}  // namespace dri
