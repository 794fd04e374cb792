#pragma once

#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gravity_model.hpp"
#include "kinematics.hpp"
#include "parallax.hpp"
#include "quasi_kepler.hpp"
#include "types.hpp"

namespace dri {

struct PropagatorConfig {
    Order order = Order::second;
    GravityModel model{};
};

enum class Warning {
    /// Osculating eccentricity above the accuracy envelope of the theory.
    eccentricity_above_envelope,
};

inline const char* to_string(Warning w) {
    switch (w) {
        case Warning::eccentricity_above_envelope: return "eccentricity_above_envelope";
    }
    return "unknown";
}

/// Osculating eccentricities at or above this value are accepted with a warning.
inline constexpr double kEccentricityEnvelope = 0.1;

struct EphemerisSample {
    double t = 0.0;
    PolarNodalState polar;
    CartesianState cartesian;
};

struct Ephemeris {
    double epoch = 0.0;
    std::vector<EphemerisSample> samples;
};

/// Radial-intermediary analytical propagator.
///
/// Construction maps the osculating epoch state into prime space and freezes
/// the quasi-Keplerian elements; afterwards the object is immutable and
/// state_at() may be called concurrently.
class DriPropagator {
public:
    DriPropagator(const PolarNodalState& initial, const PropagatorConfig& cfg) : cfg_(cfg) {
        validate(cfg_.model);
        validate(initial);
        if (cfg_.order != Order::first && cfg_.order != Order::second)
            throw DomainError("propagator order must be 1 or 2");
        if (conic_functions(initial, cfg_.model).ecc >= kEccentricityEnvelope * (1.0 - 1e-9))
            warnings_.push_back(Warning::eccentricity_above_envelope);
        prime0_ = apply_inverse(initial, cfg_.model, cfg_.order);
        elements_ = build_elements(prime0_, cfg_.model);
    }

    DriPropagator(const CartesianState& initial, const PropagatorConfig& cfg)
        : DriPropagator(cartesian_to_polar_nodal(initial), cfg) {}

    const PropagatorConfig& config() const noexcept { return cfg_; }
    const PolarNodalState& prime_epoch_state() const noexcept { return prime0_; }
    const QuasiKeplerianElements& elements() const noexcept { return elements_; }
    const std::vector<Warning>& warnings() const noexcept { return warnings_; }

    PolarNodalState prime_at(double t) const { return propagate_prime(elements_, t); }

    /// Osculating polar-nodal state at elapsed time `t` [s].
    PolarNodalState polar_at(double t) const { return apply_direct(prime_at(t), cfg_.model, cfg_.order); }

    EphemerisSample state_at(double t) const {
        const PolarNodalState polar = polar_at(t);
        return {t, polar, polar_nodal_to_cartesian(polar)};
    }

    Ephemeris ephemeris(std::span<const double> t_grid) const {
        Ephemeris out;
        out.epoch = t_grid.empty() ? 0.0 : t_grid.front();
        out.samples.reserve(t_grid.size());
        for (std::size_t k = 0; k < t_grid.size(); ++k) {
            if (k > 0 && !(t_grid[k] > t_grid[k - 1]))
                throw DomainError("ephemeris: time grid must be strictly increasing");
            out.samples.push_back(state_at(t_grid[k]));
        }
        return out;
    }

private:
    PropagatorConfig cfg_;
    PolarNodalState prime0_;
    QuasiKeplerianElements elements_;
    std::vector<Warning> warnings_;
};

/// One-shot initialize/evaluate over a grid.
inline Ephemeris ephemeris(const PolarNodalState& initial, std::span<const double> t_grid,
                           const PropagatorConfig& cfg) {
    return DriPropagator(initial, cfg).ephemeris(t_grid);
}

/// Uniform grid 0, step, 2 step, ... up to and including `duration`.
inline std::vector<double> uniform_grid(double duration, double step) {
    if (!(step > 0.0)) throw DomainError("uniform_grid: step must be positive");
    if (!(duration >= 0.0)) throw DomainError("uniform_grid: duration must be non-negative");
    const auto n = static_cast<std::size_t>(std::floor(duration / step * (1.0 + 1e-14))) + 1;
    std::vector<double> grid(n);
    for (std::size_t k = 0; k < n; ++k) grid[k] = static_cast<double>(k) * step;
    return grid;
}

}  // namespace dri
