#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../gravity_model.hpp"
#include "../parallax.hpp"
#include "../propagator.hpp"
#include "../quasi_kepler.hpp"
#include "../verify/coefficient_table.hpp"
#include "harness.hpp"

namespace dri::bench {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
};

struct AcceptanceOptions {
    GravityModel model;
    IntegratorConfig integrator;
    TruthCache cache = TruthCache::disabled();
    std::filesystem::path series_table;
    unsigned threads = 0;
};

namespace acceptance {

inline std::string fmt(const char* pattern, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, a);
    return buf;
}

inline CaseSpec leo_case(double e, double i_deg, double days) {
    return {case_name(e, i_deg, days), reference_leo(e, i_deg), days, kDefaultStepSeconds};
}

/// Perigee radius of the osculating epoch conic [km].
inline double perigee(const CaseSpec& spec) { return spec.elements.a * (1.0 - spec.elements.e); }

/// Truth trajectories for `cases`, computed concurrently. The surface check
/// is disabled for cases whose epoch conic already dips below the surface.
inline std::vector<std::vector<CartesianState>> truths(const std::vector<CaseSpec>& cases,
                                                       const AcceptanceOptions& opt) {
    std::vector<std::vector<CartesianState>> out(cases.size());
    std::vector<std::string> errors(cases.size());
    parallel_for(cases.size(), opt.threads, [&](std::size_t k) {
        IntegratorConfig cfg = opt.integrator;
        if (perigee(cases[k]) <= opt.model.alpha) cfg.stop_at_surface = false;
        try {
            out[k] = case_truth(cases[k], opt.model, cfg, opt.cache);
        } catch (const std::exception& e) {
            errors[k] = cases[k].name + ": " + e.what();
        }
    });
    for (const auto& e : errors)
        if (!e.empty()) throw ConvergenceError("truth generation failed for " + e);
    return out;
}

/// Relative round-trip residual: r and R, Theta scaled by their natural units,
/// angles by a full turn.
inline double relative_residual(const PolarNodalState& a, const PolarNodalState& b) {
    const double v = b.Theta / b.r;
    return std::max({std::abs(a.r - b.r) / b.r, std::abs(a.theta - b.theta) / kTwoPi,
                     std::abs(a.nu - b.nu) / kTwoPi, std::abs(a.R - b.R) / v, std::abs(a.Theta - b.Theta) / b.Theta,
                     std::abs(a.N - b.N) / b.Theta});
}

/// Random near-circular LEO prime states, reproducible from `seed`.
inline std::vector<PolarNodalState> near_circular_states(std::size_t n, double max_e, const GravityModel& model,
                                                         std::uint64_t seed = 20260101) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ua(6800.0, 7800.0), ue(0.0, max_e), ui(0.0, kPi), uang(0.0, kTwoPi);
    std::vector<PolarNodalState> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const ClassicalElements el{ua(rng), ue(rng), ui(rng), uang(rng), uang(rng), uang(rng)};
        out.push_back(classical_to_polar_nodal(el, model));
    }
    return out;
}

/// Largest round-trip residual of inverse(direct(x)) over `states`.
inline double max_round_trip(const std::vector<PolarNodalState>& states, const GravityModel& model,
                             int first_order_sign = kInverseFirstOrderSign) {
    double worst = 0.0;
    for (const auto& prime : states) {
        const auto original = apply_direct(prime, model, Order::second);
        const auto back = apply_inverse(original, model, Order::second, first_order_sign);
        worst = std::max(worst, relative_residual(back, prime));
    }
    return worst;
}

inline CriterionResult near_circular_accuracy(const AcceptanceOptions& opt) {
    CriterionResult res{1, "30-day near-circular DRI2 accuracy (dr < 20 m, dv < 2 cm/s)", true, {}};
    std::vector<CaseSpec> cases;
    for (double i : {5.0, 55.0, 89.0}) cases.push_back(leo_case(0.005, i, 30.0));
    const auto truth = truths(cases, opt);
    std::ostringstream os;
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const auto s = evaluate_case(cases[k], PropagatorKind::dri2, opt.model, truth[k]).summary;
        const bool ok = s.max_dr_m < 20.0 && s.max_dv_mps < 0.02;
        res.passed = res.passed && ok;
        os << (k ? "; " : "") << "i=" << cases[k].elements.i / kDeg << ": dr=" << fmt("%.2f", s.max_dr_m)
           << " m dv=" << fmt("%.4f", s.max_dv_mps) << " m/s" << (ok ? "" : " FAIL");
    }
    res.detail = os.str();
    return res;
}

inline CriterionResult eccentric_accuracy(const AcceptanceOptions& opt) {
    CriterionResult res{2, "30-day eccentric DRI2 accuracy (dr < 0.5 km, |dv| < 50 cm/s)", true, {}};
    std::vector<CaseSpec> cases;
    for (double e : {0.025, 0.05, 0.075, 0.1})
        for (double i : {5.0, 55.0, 89.0}) cases.push_back(leo_case(e, i, 30.0));
    const auto truth = truths(cases, opt);
    std::ostringstream os;
    double worst_dr = 0.0, worst_dv = 0.0;
    std::vector<std::string> unchecked;
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const auto s = evaluate_case(cases[k], PropagatorKind::dri2, opt.model, truth[k]).summary;
        worst_dr = std::max(worst_dr, s.max_dr_m);
        worst_dv = std::max(worst_dv, s.max_dv_mps);
        if (perigee(cases[k]) <= opt.model.alpha) unchecked.push_back(cases[k].name);
        if (!(s.max_dr_m < 500.0 && s.max_dv_mps < 0.5)) {
            res.passed = false;
            os << cases[k].name << " dr=" << fmt("%.1f", s.max_dr_m) << " m dv=" << fmt("%.3f", s.max_dv_mps)
               << " m/s FAIL; ";
        }
    }
    os << "worst dr=" << fmt("%.1f", worst_dr) << " m, worst dv=" << fmt("%.3f", worst_dv) << " m/s";
    if (!unchecked.empty()) {
        os << "; surface check off (perigee below surface):";
        for (const auto& n : unchecked) os << ' ' << n;
    }
    res.detail = os.str();
    return res;
}

inline CriterionResult order_ranking(const AcceptanceOptions& opt) {
    CriterionResult res{3, "DRI2 no worse than DRI1 on the 7-day grid; >= 5x better at i=55, e=0.005", true, {}};
    std::vector<CaseSpec> cases;
    for (const auto& c : default_grid())
        if (c.duration_days == 7.0) cases.push_back(c);
    const auto truth = truths(cases, opt);
    std::ostringstream os;
    double ratio = std::numeric_limits<double>::quiet_NaN();
    int above_5m = 0;
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const double d1 = evaluate_case(cases[k], PropagatorKind::dri1, opt.model, truth[k]).summary.max_dr_m;
        const double d2 = evaluate_case(cases[k], PropagatorKind::dri2, opt.model, truth[k]).summary.max_dr_m;
        const bool ok = d2 <= d1;
        if (d2 >= 5.0) ++above_5m;
        res.passed = res.passed && ok;
        os << cases[k].name << " " << fmt("%.2f", d1) << "/" << fmt("%.2f", d2) << (ok ? "" : " FAIL") << "; ";
        if (cases[k].elements.e == 0.005 && std::abs(cases[k].elements.i / kDeg - 55.0) < 1e-9) ratio = d1 / d2;
    }
    const bool ratio_ok = ratio >= 5.0;
    res.passed = res.passed && ratio_ok;
    os << "DRI1/DRI2 ratio at i=55 e=0.005: " << fmt("%.2f", ratio) << (ratio_ok ? "" : " FAIL")
       << "; informational 5 m DRI2 7-day threshold exceeded in " << above_5m << " of " << cases.size() << " cases";
    res.detail = "max dr DRI1/DRI2 [m]: " + os.str();
    return res;
}

inline CriterionResult keplerian_limit(const AcceptanceOptions& opt) {
    CriterionResult res{4, "J2 = 0: DRI1, DRI2 and truth agree to 1 mm and 1e-9 km/s over 30 days", true, {}};
    AcceptanceOptions kepler = opt;
    kepler.model.j2 = 0.0;
    kepler.integrator.rel_tol = 1e-16;
    kepler.integrator.abs_tol = 1e-16;
    kepler.integrator.extended_precision = true;
    std::vector<CaseSpec> cases;
    for (double i : {5.0, 55.0, 89.0}) cases.push_back(leo_case(0.005, i, 30.0));
    cases.push_back(leo_case(0.075, 55.0, 30.0));
    const auto truth = truths(cases, kepler);
    double worst_pos = 0.0, worst_vel = 0.0;
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const auto grid = case_grid(cases[k]);
        const auto initial = case_initial_polar(cases[k], kepler.model);
        const DriPropagator p1(initial, {Order::first, kepler.model});
        const DriPropagator p2(initial, {Order::second, kepler.model});
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const auto s1 = p1.state_at(grid[j]).cartesian;
            const auto s2 = p2.state_at(grid[j]).cartesian;
            for (const auto* s : {&s1, &s2}) {
                worst_pos = std::max(worst_pos, norm(s->position - truth[k][j].position));
                worst_vel = std::max(worst_vel, norm(s->velocity - truth[k][j].velocity));
            }
            worst_pos = std::max(worst_pos, norm(s1.position - s2.position));
            worst_vel = std::max(worst_vel, norm(s1.velocity - s2.velocity));
        }
    }
    res.passed = worst_pos < 1e-6 && worst_vel < 1e-9;
    res.detail = "max position difference " + fmt("%.3e", worst_pos * 1e6) + " mm, max velocity difference " +
                 fmt("%.3e", worst_vel) + " km/s";
    return res;
}

inline CriterionResult transformation_consistency(const AcceptanceOptions& opt) {
    CriterionResult res{5, "parallax round trip: residual < 1e-9 (e <= 0.01), cubic scaling in J2", true, {}};
    const auto states = near_circular_states(2000, 0.01, opt.model);
    const double full = max_round_trip(states, opt.model);
    const double half = max_round_trip(states, opt.model.scaled_j2(0.5));
    const double quarter = max_round_trip(states, opt.model.scaled_j2(0.25));
    const double wrong_sign = max_round_trip(states, opt.model, -kInverseFirstOrderSign);
    const double f2 = full / half, f4 = full / quarter;
    res.passed = full < 1e-9 && f2 >= 6.0 && f2 <= 10.0 && f4 >= 40.0 && f4 <= 80.0 && wrong_sign > 1e4 * full;
    res.detail = "max residual " + fmt("%.3e", full) + ", J2/2 factor " + fmt("%.2f", f2) + ", J2/4 factor " +
                 fmt("%.2f", f4) + ", opposite first-order sign " + fmt("%.3e", wrong_sign);
    return res;
}

inline CriterionResult invariants(const AcceptanceOptions& opt) {
    CriterionResult res{6, "invariants: N exact, energy drift < 1e-8, prime energy constant to 1e-11", true, {}};
    double worst_energy = 0.0, worst_prime = 0.0;
    bool n_exact = true;
    for (double i : {5.0, 55.0, 89.0}) {
        const CaseSpec spec = leo_case(0.005, i, 30.0);
        const auto initial = case_initial_polar(spec, opt.model);
        const DriPropagator prop(initial, {Order::second, opt.model});
        const double h0 = main_problem_energy(prop.polar_at(0.0), opt.model);
        const double k0 = quasi_kepler_energy(prop.prime_at(0.0), prop.elements());
        const double n0 = prop.polar_at(0.0).N;
        for (double t : case_grid(spec)) {
            const auto prime = prop.prime_at(t);
            const auto osc = apply_direct(prime, opt.model, Order::second);
            n_exact = n_exact && osc.N == n0 && prime.N == n0 && n0 == initial.N;
            worst_energy = std::max(worst_energy, std::abs(main_problem_energy(osc, opt.model) - h0) / std::abs(h0));
            worst_prime = std::max(worst_prime, std::abs(quasi_kepler_energy(prime, prop.elements()) - k0) / std::abs(k0));
        }
    }
    res.passed = n_exact && worst_energy < 1e-8 && worst_prime < 1e-11;
    res.detail = std::string("N ") + (n_exact ? "bit-constant" : "NOT constant") + ", energy drift " +
                 fmt("%.3e", worst_energy) + ", prime energy drift " + fmt("%.3e", worst_prime);
    return res;
}

inline CriterionResult kepler_solver(const AcceptanceOptions&) {
    CriterionResult res{7, "Kepler solver residual < 1e-13 over +-100 revolutions", true, {}};
    double worst = 0.0;
    const int n = 10000;
    for (double e : {0.0, 0.05, 0.1, 0.2, 0.3}) {
        for (int k = 0; k < n; ++k) {
            const double l = -100.0 * kTwoPi + 200.0 * kTwoPi * (k + 0.5) / n;
            const double u = solve_kepler(l, e);
            const long double lu = u;
            worst = std::max(worst, double(std::abs(lu - e * std::sin(lu) - l)));
        }
    }
    res.passed = worst < 1e-13;
    res.detail = "max |u - e sin u - l| = " + fmt("%.3e", worst);
    return res;
}

inline CriterionResult series_transcription(const AcceptanceOptions& opt) {
    CriterionResult res{8, "correction series match the coefficient table exactly", false, {}};
    const auto table = verify::read_coefficient_table(opt.series_table);
    const auto mismatches = verify::compare_with_table(table);
    res.passed = mismatches.empty();
    std::ostringstream os;
    os << table.size() << " table terms, " << mismatches.size() << " mismatching series";
    for (const auto& m : mismatches)
        os << "; " << verify::to_string(m.variable) << '/' << verify::to_string(m.direction) << ": " << m.difference;
    res.detail = os.str();
    return res;
}

inline CriterionResult evaluation_cost(const AcceptanceOptions& opt) {
    CriterionResult res{9, "DRI2 per-sample cost independent of horizon (within 20%)", true, {}};
    const CaseSpec spec = leo_case(0.005, 55.0, 30.0);
    const DriPropagator prop(case_initial_polar(spec, opt.model), {Order::second, opt.model});
    const HorizonTiming t = horizon_timing(prop, 30.0);
    const double ratio = t.ratio();
    res.passed = ratio >= 1.0 / 1.2 && ratio <= 1.2;
    res.detail = "day 1: " + fmt("%.1f", t.early_ns) + " ns/sample, day 30: " + fmt("%.1f", t.late_ns) +
                 " ns/sample, ratio " + fmt("%.3f", ratio);
    return res;
}

}  // namespace acceptance

using CriterionFn = std::function<CriterionResult(const AcceptanceOptions&)>;

inline std::vector<CriterionFn> acceptance_criteria() {
    using namespace acceptance;
    return {near_circular_accuracy, eccentric_accuracy, order_ranking,  keplerian_limit, transformation_consistency,
            invariants,             kepler_solver,      series_transcription, evaluation_cost};
}

inline std::string format_result(const CriterionResult& r) {
    return std::string(r.passed ? "PASS" : "FAIL") + "  [" + std::to_string(r.id) + "] " + r.title + " :: " +
           r.detail;
}

/// Runs every criterion, each isolated so an exception marks only itself
/// failed. `report` is called once per criterion as results arrive.
inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                                   const std::function<void(const CriterionResult&)>& report = {}) {
    std::vector<CriterionResult> out;
    int id = 1;
    for (const auto& criterion : acceptance_criteria()) {
        CriterionResult r;
        try {
            r = criterion(opt);
        } catch (const std::exception& e) {
            r = {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what()};
        }
        ++id;
        if (report) report(r);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace dri::bench
