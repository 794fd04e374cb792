#pragma once

#include <array>
#include <cmath>

namespace dri {

using Vec3 = std::array<double, 3>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kDeg = kPi / 180.0;
inline constexpr double kSecondsPerDay = 86400.0;

constexpr Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
constexpr Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
constexpr Vec3 operator*(double k, const Vec3& a) { return {k * a[0], k * a[1], k * a[2]}; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Canonical polar-nodal variables.
///
/// `theta` (argument of latitude) and `nu` (node) are kept unwrapped inside
/// the propagators; reduce with wrap_two_pi() at output boundaries only.
struct PolarNodalState {
    double r = 0.0;      ///< radial distance [km]
    double theta = 0.0;  ///< argument of latitude [rad]
    double nu = 0.0;     ///< longitude of the ascending node [rad]
    double R = 0.0;      ///< radial velocity [km/s]
    double Theta = 0.0;  ///< angular momentum modulus [km^2/s]
    double N = 0.0;      ///< polar component of the angular momentum [km^2/s]

    friend bool operator==(const PolarNodalState&, const PolarNodalState&) = default;
};

/// Inertial position and velocity.
struct CartesianState {
    Vec3 position{};  ///< [km]
    Vec3 velocity{};  ///< [km/s]

    friend bool operator==(const CartesianState&, const CartesianState&) = default;
};

/// Osculating classical elements; angles in radians.
struct ClassicalElements {
    double a = 0.0;      ///< semimajor axis [km]
    double e = 0.0;      ///< eccentricity
    double i = 0.0;      ///< inclination
    double omega = 0.0;  ///< argument of perigee
    double Omega = 0.0;  ///< longitude of the ascending node
    double f = 0.0;      ///< true anomaly
};

/// Reduces an angle to [0, 2pi).
inline double wrap_two_pi(double angle) {
    double w = std::fmod(angle, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    // fmod of a tiny negative value can round up to exactly 2pi
    return w >= kTwoPi ? 0.0 : w;
}

}  // namespace dri
