#pragma once

#include <cmath>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "../errors.hpp"
#include "../format.hpp"
#include "../gravity_model.hpp"
#include "../parallax.hpp"
#include "../reference_integrator.hpp"
#include "../types.hpp"

namespace dri::bench {

enum class PropagatorKind { dri1, dri2 };

inline const char* to_string(PropagatorKind k) { return k == PropagatorKind::dri1 ? "DRI1" : "DRI2"; }

inline Order order_of(PropagatorKind k) { return k == PropagatorKind::dri1 ? Order::first : Order::second; }

inline PropagatorKind parse_propagator(std::string name) {
    for (auto& ch : name) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (name == "DRI1") return PropagatorKind::dri1;
    if (name == "DRI2" || name == "DRI") return PropagatorKind::dri2;
    throw ConfigError("unknown propagator '" + name + "' (expected DRI1 or DRI2)");
}

struct CaseSpec {
    std::string name;
    ClassicalElements elements;  ///< radians
    double duration_days = 7.0;
    double step_s = 60.0;
};

inline constexpr double kMaxDurationDays = 31.0;
inline constexpr double kDefaultStepSeconds = 60.0;

struct BenchmarkConfig {
    GravityModel model{};
    IntegratorConfig integrator{};
    std::vector<CaseSpec> cases;
    std::vector<PropagatorKind> propagators{PropagatorKind::dri1, PropagatorKind::dri2};
    std::filesystem::path out_dir = "results";
    std::size_t timing_evaluations = 10000;
};

inline void validate(const BenchmarkConfig& cfg) {
    try {
        validate(cfg.model);
        validate(cfg.integrator);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (cfg.cases.empty()) throw ConfigError("config: at least one case is required");
    if (cfg.propagators.empty()) throw ConfigError("config: at least one propagator is required");
    if (cfg.timing_evaluations != 0 && cfg.timing_evaluations < 10000)
        throw ConfigError("config: timing_evaluations must be 0 (off) or >= 10000");
    std::set<std::string> names;
    for (const auto& c : cfg.cases) {
        if (!names.insert(c.name).second) throw ConfigError("config: duplicate case name '" + c.name + "'");
        if (!(c.duration_days > 0.0 && c.duration_days <= kMaxDurationDays))
            throw ConfigError("case " + c.name + ": duration must be in (0, 31] days");
        if (!(c.step_s > 0.0)) throw ConfigError("case " + c.name + ": step must be positive");
        const auto& el = c.elements;
        if (!(el.a > 0.0) || !(el.e >= 0.0 && el.e < 1.0) || !(el.i >= 0.0 && el.i <= kPi))
            throw ConfigError("case " + c.name + ": invalid orbital elements");
    }
}

/// Canonical case name, e.g. "e0.005_i55_7d".
inline std::string case_name(double e, double i_deg, double days) {
    std::ostringstream os;
    os << 'e' << format_exact(e) << "_i" << format_exact(i_deg) << '_' << format_exact(days) << 'd';
    return os.str();
}

/// Reference LEO: a = 7000 km, omega = 10 deg, Omega = 0, f = 15 deg.
inline ClassicalElements reference_leo(double e, double i_deg) {
    return {7000.0, e, i_deg * kDeg, 10.0 * kDeg, 0.0, 15.0 * kDeg};
}

/// e in {0.005, 0.075} x i in {5, 55, 89} deg x {7, 30} days on the reference LEO.
inline std::vector<CaseSpec> default_grid() {
    std::vector<CaseSpec> out;
    for (double days : {7.0, 30.0})
        for (double e : {0.005, 0.075})
            for (double i : {5.0, 55.0, 89.0})
                out.push_back({case_name(e, i, days), reference_leo(e, i), days, kDefaultStepSeconds});
    return out;
}

namespace detail {

using boost::property_tree::ptree;

inline double get_number(const ptree& section, const std::string& where, const std::string& key, double fallback,
                         bool required = false) {
    const auto child = section.get_child_optional(ptree::path_type(key, '\0'));
    if (!child) {
        if (required) throw ConfigError(where + ": missing key '" + key + "'");
        return fallback;
    }
    double v = 0.0;
    if (!parse_double(child->data(), v) || !std::isfinite(v))
        throw ConfigError(where + ": key '" + key + "' is not a number: '" + child->data() + "'");
    return v;
}

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t\r");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

inline std::vector<double> get_list(const ptree& section, const std::string& where, const std::string& key,
                                    std::vector<double> fallback) {
    const auto child = section.get_child_optional(ptree::path_type(key, '\0'));
    if (!child) return fallback;
    std::vector<double> out;
    for (const auto& item : split_list(child->data())) {
        double v = 0.0;
        if (!parse_double(item, v)) throw ConfigError(where + ": bad list entry '" + item + "' in '" + key + "'");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError(where + ": empty list '" + key + "'");
    return out;
}

inline void check_keys(const ptree& section, const std::string& where, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : section) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

}  // namespace detail

/// Parses the sectioned key-value config. Angles are in degrees and
/// distances in km; see configs/reference_grid.ini for the layout.
inline BenchmarkConfig parse_config(std::istream& is, const std::string& source = "<config>") {
    using detail::ptree;
    ptree root;
    try {
        boost::property_tree::ini_parser::read_ini(is, root);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(source + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
    }

    BenchmarkConfig cfg;
    for (const auto& [name, section] : root) {
        const std::string where = source + " [" + name + "]";
        if (!section.data().empty()) throw ConfigError(source + ": key '" + name + "' outside any section");
        if (name == "model") {
            detail::check_keys(section, where, {"mu", "alpha", "j2"});
            cfg.model.mu = detail::get_number(section, where, "mu", cfg.model.mu);
            cfg.model.alpha = detail::get_number(section, where, "alpha", cfg.model.alpha);
            cfg.model.j2 = detail::get_number(section, where, "j2", cfg.model.j2);
        } else if (name == "integrator") {
            detail::check_keys(section, where, {"rel_tol", "abs_tol", "max_step", "stop_at_surface", "extended_precision"});
            cfg.integrator.rel_tol = detail::get_number(section, where, "rel_tol", cfg.integrator.rel_tol);
            cfg.integrator.abs_tol = detail::get_number(section, where, "abs_tol", cfg.integrator.abs_tol);
            cfg.integrator.max_step = detail::get_number(section, where, "max_step", cfg.integrator.max_step);
            cfg.integrator.stop_at_surface =
                detail::get_number(section, where, "stop_at_surface", cfg.integrator.stop_at_surface ? 1.0 : 0.0) != 0.0;
            cfg.integrator.extended_precision =
                detail::get_number(section, where, "extended_precision",
                                   cfg.integrator.extended_precision ? 1.0 : 0.0) != 0.0;
        } else if (name == "run") {
            detail::check_keys(section, where, {"propagators", "out_dir", "timing_evaluations"});
            if (auto p = section.get_optional<std::string>(ptree::path_type("propagators", '\0'))) {
                cfg.propagators.clear();
                for (const auto& item : detail::split_list(*p)) cfg.propagators.push_back(parse_propagator(item));
            }
            if (auto o = section.get_optional<std::string>(ptree::path_type("out_dir", '\0'))) cfg.out_dir = *o;
            const double n = detail::get_number(section, where, "timing_evaluations", 10000.0);
            if (!(n >= 0.0)) throw ConfigError(where + ": timing_evaluations must be non-negative");
            cfg.timing_evaluations = static_cast<std::size_t>(n);
        } else if (name == "grid") {
            detail::check_keys(section, where, {"a", "omega", "Omega", "f", "e", "i", "days", "step_s"});
            const double a = detail::get_number(section, where, "a", 7000.0);
            const double w = detail::get_number(section, where, "omega", 10.0);
            const double node = detail::get_number(section, where, "Omega", 0.0);
            const double f = detail::get_number(section, where, "f", 15.0);
            const double step = detail::get_number(section, where, "step_s", kDefaultStepSeconds);
            for (double days : detail::get_list(section, where, "days", {7.0, 30.0}))
                for (double e : detail::get_list(section, where, "e", {0.005, 0.075}))
                    for (double i : detail::get_list(section, where, "i", {5.0, 55.0, 89.0}))
                        cfg.cases.push_back({case_name(e, i, days),
                                             {a, e, i * kDeg, w * kDeg, node * kDeg, f * kDeg},
                                             days,
                                             step});
        } else if (name.rfind("case ", 0) == 0) {
            detail::check_keys(section, where, {"a", "e", "i", "omega", "Omega", "f", "days", "step_s"});
            CaseSpec c;
            c.name = name.substr(5);
            if (c.name.empty() || c.name.find_first_of("/\\ ") != std::string::npos)
                throw ConfigError(where + ": case names must be non-empty without spaces or slashes");
            c.elements.a = detail::get_number(section, where, "a", 0.0, true);
            c.elements.e = detail::get_number(section, where, "e", 0.0, true);
            c.elements.i = detail::get_number(section, where, "i", 0.0, true) * kDeg;
            c.elements.omega = detail::get_number(section, where, "omega", 0.0) * kDeg;
            c.elements.Omega = detail::get_number(section, where, "Omega", 0.0) * kDeg;
            c.elements.f = detail::get_number(section, where, "f", 0.0) * kDeg;
            c.duration_days = detail::get_number(section, where, "days", 7.0);
            c.step_s = detail::get_number(section, where, "step_s", kDefaultStepSeconds);
            cfg.cases.push_back(c);
        } else {
            throw ConfigError(source + ": unknown section [" + name + "]");
        }
    }
    validate(cfg);
    return cfg;
}

inline BenchmarkConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError(path.string() + ": cannot open config file");
    return parse_config(is, path.string());
}

}  // namespace dri::bench
