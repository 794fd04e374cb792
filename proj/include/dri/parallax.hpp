#pragma once

#include <cmath>

#include "gravity_model.hpp"
#include "kinematics.hpp"
#include "types.hpp"

// Short-period contact transformation between osculating polar-nodal
// variables and the prime variables of the radial intermediary.
//
// Each variable gets the total correction  delta*D1 + delta^2/2 * D2, with
// delta = -J2 (alpha/p)^2 / 2 evaluated in the variable set being corrected.
// The series are templated on the scalar so the coefficient tables can be
// checked symbolically in the tests; their second-order parts drop O(e^2).

namespace dri {

enum class Order : int { first = 1, second = 2 };

inline constexpr int order_value(Order o) { return static_cast<int>(o); }

/// Sign of the first-order term when mapping original -> prime. The same
/// first-order series is used in both directions; a contact transformation
/// needs it to enter the inverse with the opposite sign (the round-trip
/// residual is O(delta) otherwise, O(delta^3) with this choice).
inline constexpr int kInverseFirstOrderSign = -1;

/// Per-variable correction increments.
template <class T>
struct BasicCorrectionSet {
    T dr{};
    T dtheta{};
    T dnu{};
    T dR{};
    T dTheta{};
    T dN{};  ///< always zero
};

using CorrectionSet = BasicCorrectionSet<double>;

/// Inputs of the series: inclination and eccentricity-vector functions,
/// scale factors and harmonics of the argument of latitude.
template <class T>
struct SeriesArguments {
    T c;      ///< cos i
    T s2;     ///< sin^2 i
    T kappa;  ///< e cos f
    T sigma;  ///< e sin f
    T p;      ///< semilatus rectum
    T Theta;
    T sin2, cos2, sin4, cos4;
};

/// Geometry of one variable set. Never mix prime and original inputs.
struct OrbitGeometry {
    double c = 0.0;
    double s2 = 0.0;
    double p = 0.0;
    double delta = 0.0;
    double kappa = 0.0;
    double sigma = 0.0;
};

inline OrbitGeometry geometry(const PolarNodalState& state, const GravityModel& model) {
    const ConicFunctions conic = conic_functions(state, model);
    OrbitGeometry g;
    g.c = std::clamp(state.N / state.Theta, -1.0, 1.0);
    g.s2 = (1.0 - g.c) * (1.0 + g.c);
    g.p = conic.p;
    g.delta = -0.5 * model.j2 * (model.alpha * model.alpha) / (conic.p * conic.p);
    g.kappa = conic.kappa;
    g.sigma = conic.sigma;
    return g;
}

/// Harmonics of 2*theta and 4*theta from one sin/cos pair on the reduced angle.
struct Harmonics {
    double sin2, cos2, sin4, cos4;
};

inline Harmonics harmonics(double theta) {
    const double two = 2.0 * wrap_two_pi(theta);
    const double s = std::sin(two);
    const double c = std::cos(two);
    return {s, c, 2.0 * s * c, 2.0 * c * c - 1.0};
}

inline SeriesArguments<double> series_arguments(const OrbitGeometry& g, double theta, double Theta) {
    const Harmonics h = harmonics(theta);
    return {g.c, g.s2, g.kappa, g.sigma, g.p, Theta, h.sin2, h.cos2, h.sin4, h.cos4};
}

namespace series {

template <class T>
T q(long num, long den = 1) {
    return T(num) / T(den);
}

template <class T>
BasicCorrectionSet<T> first_order(const SeriesArguments<T>& a) {
    const T& s2 = a.s2;
    const T& k = a.kappa;
    const T& sg = a.sigma;
    const T one_k = T(1) + k;
    BasicCorrectionSet<T> d;
    d.dr = a.p * (T(1) - s2 * (q<T>(3, 2) + q<T>(1, 2) * a.cos2));
    d.dtheta = (q<T>(3, 2) - q<T>(7, 4) * s2 + (T(2) - T(3) * s2) * k) * a.sin2 -
               (T(5) - T(6) * s2 + (T(1) - T(2) * s2) * a.cos2) * sg;
    d.dnu = a.c * ((T(3) + a.cos2) * sg - (q<T>(3, 2) + T(2) * k) * a.sin2);
    d.dR = a.Theta / a.p * one_k * one_k * s2 * a.sin2;
    d.dTheta = -a.Theta * s2 * ((q<T>(3, 2) + T(2) * k) * a.cos2 + sg * a.sin2);
    d.dN = T(0);
    return d;
}

template <class T>
BasicCorrectionSet<T> second_order_direct(const SeriesArguments<T>& a) {
    const T& s2 = a.s2;
    const T s4 = s2 * s2;
    const T& k = a.kappa;
    const T& sg = a.sigma;
    const T& S2 = a.sin2;
    const T& C2 = a.cos2;
    const T& S4 = a.sin4;
    const T& C4 = a.cos4;
    BasicCorrectionSet<T> d;

    d.dr = a.p * (T(-8) + s2 * (T(15) - q<T>(23, 4) * s2) +
                  (q<T>(-3, 2) + s2 * (q<T>(7, 2) - q<T>(41, 16) * s2)) * k -
                  (T(13) - T(14) * s2 - (q<T>(65, 8) - q<T>(153, 16) * s2) * k) * s2 * C2 -
                  (q<T>(1, 4) - q<T>(1, 16) * k) * s4 * C4 +
                  ((q<T>(27, 8) - q<T>(51, 16) * s2) * s2 * S2 + q<T>(9, 32) * s4 * S4) * sg);

    d.dtheta = (T(8) + s2 * (T(-29) + q<T>(85, 4) * s2) +
                (T(32) + s2 * (q<T>(-803, 4) + q<T>(1419, 8) * s2)) * k) * S2 +
               (q<T>(9, 4) + s2 * (q<T>(-3, 8) - q<T>(17, 8) * s2) +
                (T(6) + s2 * (T(-3) - q<T>(55, 16) * s2)) * k) * S4 +
               (T(72) + s2 * (T(-121) + q<T>(327, 8) * s2) +
                (T(-56) + s2 * (q<T>(989, 4) - q<T>(1609, 8) * s2)) * C2 +
                (T(-3) + s2 * (T(3) + q<T>(1, 8) * s2)) * C4) * sg;

    d.dnu = a.c * (((T(56) - T(92) * s2) * C2 + (T(3) - q<T>(3, 2) * s2) * (T(-9) + C4)) * sg -
                   (T(8) - T(21) * s2 + (T(32) - T(76) * s2) * k) * S2 -
                   (q<T>(9, 4) + q<T>(3, 4) * s2 + T(6) * k) * S4);

    d.dR = a.Theta / a.p *
           ((T(16) - T(16) * s2 + (q<T>(237, 8) - q<T>(437, 16) * s2) * k) * s2 * S2 +
            (T(1) + q<T>(65, 32) * k) * s4 * S4 +
            (q<T>(-3, 2) + s2 * (q<T>(-1, 2) + q<T>(71, 16) * s2) +
             (q<T>(-95, 8) + q<T>(231, 16) * s2) * s2 * C2 + q<T>(17, 16) * s4 * C4) * sg);

    d.dTheta = a.Theta * ((q<T>(9, 2) - q<T>(25, 4) * s2 + T(6) * (T(2) - T(3) * s2) * k) * s2 -
                          (T(8) - q<T>(15, 2) * s2 + T(32) * (T(1) - s2) * k) * s2 * C2 -
                          q<T>(3, 4) * s4 * C4 +
                          sg * ((T(-56) + T(64) * s2) * s2 * S2 + q<T>(3, 2) * s4 * S4));
    d.dN = T(0);
    return d;
}

// The group 9/4 - 15/8 s^2 + 2 s^4 + (6 - 3 s^2 - 25/16 s^4) kappa of dtheta
// multiplies sin 4theta; as a bare constant it leaves an O(delta^2) secular
// offset in the round trip.
template <class T>
BasicCorrectionSet<T> second_order_inverse(const SeriesArguments<T>& a) {
    const T& s2 = a.s2;
    const T s4 = s2 * s2;
    const T& k = a.kappa;
    const T& sg = a.sigma;
    const T& S2 = a.sin2;
    const T& C2 = a.cos2;
    const T& S4 = a.sin4;
    const T& C4 = a.cos4;
    BasicCorrectionSet<T> d;

    d.dr = a.p * (T(8) + s2 * (T(-12) + s2) + (q<T>(3, 2) + s2 * (q<T>(1, 2) - q<T>(71, 16) * s2)) * k +
                  (T(28) - T(32) * s2 + (q<T>(95, 8) - q<T>(231, 16) * s2) * k) * s2 * C2 -
                  (T(1) + q<T>(17, 16) * k) * s4 * C4 +
                  ((q<T>(-27, 8) + q<T>(51, 16) * s2) * s2 * S2 - q<T>(9, 32) * s4 * S4) * sg);

    d.dtheta = (q<T>(9, 4) + s2 * (q<T>(-15, 8) + T(2) * s2) +
                (T(6) + s2 * (T(-3) - q<T>(25, 16) * s2)) * k) * S4 +
               (T(-12) + s2 * (T(31) - q<T>(73, 4) * s2) +
                (T(-40) + s2 * (q<T>(819, 4) - q<T>(1371, 8) * s2)) * k) * S2 +
               (T(-72) + s2 * (T(116) - q<T>(243, 8) * s2) +
                (T(26) + s2 * (q<T>(-1029, 4) + q<T>(1993, 8) * s2)) * C2 +
                (T(-3) + q<T>(43, 8) * s4) * C4) * sg;

    d.dnu = a.c * ((T(12) - T(21) * s2 + (T(40) - T(76) * s2) * k) * S2 -
                   (q<T>(9, 4) - q<T>(3, 4) * s2 + T(6) * k) * S4 +
                   (T(27) - q<T>(27, 2) * s2 + (T(-26) + T(92) * s2) * C2 + (T(3) + q<T>(3, 2) * s2) * C4) * sg);

    d.dR = a.Theta / a.p *
           ((T(-20) + T(22) * s2 - (q<T>(333, 8) - q<T>(725, 16) * s2) * k) * s2 * S2 +
            (T(1) + q<T>(95, 32) * k) * s4 * S4 +
            (q<T>(3, 2) + s2 * (q<T>(-7, 2) + q<T>(41, 16) * s2) +
             (q<T>(-65, 8) + q<T>(153, 16) * s2) * s2 * C2 - q<T>(1, 16) * s4 * C4) * sg);

    d.dTheta = a.Theta * ((q<T>(9, 2) - q<T>(25, 4) * s2 + (T(12) - T(18) * s2) * k) * s2 +
                          (T(12) - q<T>(27, 2) * s2 + (T(40) - T(44) * s2) * k) * s2 * C2 +
                          q<T>(3, 4) * s4 * C4 +
                          ((T(26) - T(28) * s2) * s2 * S2 - (q<T>(3, 2) + q<T>(9, 4) * k) * s4 * S4) * sg);
    d.dN = T(0);
    return d;
}

}  // namespace series

inline CorrectionSet first_order(const OrbitGeometry& g, double theta, double Theta) {
    return series::first_order(series_arguments(g, theta, Theta));
}

/// Second-order corrections of the prime -> original map; `g` must be built
/// from prime variables.
inline CorrectionSet second_order_direct(const OrbitGeometry& g, double theta, double Theta) {
    return series::second_order_direct(series_arguments(g, theta, Theta));
}

/// Second-order corrections of the original -> prime map; `g` must be built
/// from original variables.
inline CorrectionSet second_order_inverse(const OrbitGeometry& g, double theta, double Theta) {
    return series::second_order_inverse(series_arguments(g, theta, Theta));
}

namespace detail {

inline PolarNodalState add_corrections(const PolarNodalState& x, double w1, const CorrectionSet& d1, double w2,
                                       const CorrectionSet& d2) {
    PolarNodalState out;
    out.r = x.r + w1 * d1.dr + w2 * d2.dr;
    out.theta = x.theta + w1 * d1.dtheta + w2 * d2.dtheta;
    out.nu = x.nu + w1 * d1.dnu + w2 * d2.dnu;
    out.R = x.R + w1 * d1.dR + w2 * d2.dR;
    out.Theta = x.Theta + w1 * d1.dTheta + w2 * d2.dTheta;
    out.N = x.N;
    return out;
}

}  // namespace detail

/// Prime -> original (osculating) variables.
inline PolarNodalState apply_direct(const PolarNodalState& prime, const GravityModel& model, Order order) {
    const OrbitGeometry g = geometry(prime, model);
    const auto args = series_arguments(g, prime.theta, prime.Theta);
    const CorrectionSet d1 = series::first_order(args);
    if (order == Order::first) return detail::add_corrections(prime, g.delta, d1, 0.0, CorrectionSet{});
    const CorrectionSet d2 = series::second_order_direct(args);
    return detail::add_corrections(prime, g.delta, d1, 0.5 * g.delta * g.delta, d2);
}

/// Original (osculating) -> prime variables.
inline PolarNodalState apply_inverse(const PolarNodalState& original, const GravityModel& model, Order order,
                                     int first_order_sign = kInverseFirstOrderSign) {
    const OrbitGeometry g = geometry(original, model);
    const auto args = series_arguments(g, original.theta, original.Theta);
    const CorrectionSet d1 = series::first_order(args);
    const double w1 = first_order_sign * g.delta;
    if (order == Order::first) return detail::add_corrections(original, w1, d1, 0.0, CorrectionSet{});
    const CorrectionSet d2 = series::second_order_inverse(args);
    return detail::add_corrections(original, w1, d1, 0.5 * g.delta * g.delta, d2);
}

}  // namespace dri
