#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "../errors.hpp"
#include "../parallax.hpp"
#include "polynomial.hpp"

namespace dri::verify {

enum class Variable { r, theta, nu, R, Theta };
enum class Direction { both, direct, inverse };

inline constexpr Variable kAllVariables[] = {Variable::r, Variable::theta, Variable::nu, Variable::R,
                                             Variable::Theta};

inline const char* to_string(Variable v) {
    switch (v) {
        case Variable::r: return "r";
        case Variable::theta: return "theta";
        case Variable::nu: return "nu";
        case Variable::R: return "R";
        case Variable::Theta: return "Theta";
    }
    return "?";
}

inline const char* to_string(Direction d) {
    switch (d) {
        case Direction::both: return "both";
        case Direction::direct: return "direct";
        case Direction::inverse: return "inverse";
    }
    return "?";
}

struct SeriesTerm {
    Variable variable;
    Direction direction;
    int order;
    Rational coefficient;
    int s2_pow;
    int kappa_pow;
    int sigma_pow;
    Symbol trig;  ///< Symbol::count stands for the constant harmonic "1"
    int line;
};

/// Parses the plain-text coefficient table (see data/parallax_series.txt).
inline std::vector<SeriesTerm> read_coefficient_table(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError(path.string(), "cannot open coefficient table");
    std::vector<SeriesTerm> out;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& what) {
        throw IoError(path.string(), "line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string var, dir, coef, trig;
        SeriesTerm t{};
        t.line = lineno;
        if (!(ls >> var)) continue;
        if (!(ls >> dir >> t.order >> coef >> t.s2_pow >> t.kappa_pow >> t.sigma_pow >> trig))
            fail("expected 8 columns");

        if (var == "r") t.variable = Variable::r;
        else if (var == "theta") t.variable = Variable::theta;
        else if (var == "nu") t.variable = Variable::nu;
        else if (var == "R") t.variable = Variable::R;
        else if (var == "Theta") t.variable = Variable::Theta;
        else fail("unknown variable '" + var + "'");

        if (dir == "both") t.direction = Direction::both;
        else if (dir == "direct") t.direction = Direction::direct;
        else if (dir == "inverse") t.direction = Direction::inverse;
        else fail("unknown direction '" + dir + "'");
        if ((t.order == 1) != (t.direction == Direction::both)) fail("order/direction mismatch");

        try {
            const auto slash = coef.find('/');
            t.coefficient = slash == std::string::npos
                                ? Rational(std::stoll(coef))
                                : Rational(std::stoll(coef.substr(0, slash)), std::stoll(coef.substr(slash + 1)));
        } catch (const std::exception&) {
            fail("bad coefficient '" + coef + "'");
        }

        if (trig == "1") t.trig = Symbol::count;
        else if (trig == "sin2") t.trig = Symbol::sin2;
        else if (trig == "cos2") t.trig = Symbol::cos2;
        else if (trig == "sin4") t.trig = Symbol::sin4;
        else if (trig == "cos4") t.trig = Symbol::cos4;
        else fail("unknown harmonic '" + trig + "'");
        out.push_back(t);
    }
    return out;
}

inline Polynomial prefactor(Variable v) {
    using P = Polynomial;
    switch (v) {
        case Variable::r: return P::symbol(Symbol::p);
        case Variable::theta: return P(1);
        case Variable::nu: return P::symbol(Symbol::c);
        case Variable::R: return P::symbol(Symbol::Theta) / P::symbol(Symbol::p);
        case Variable::Theta: return P::symbol(Symbol::Theta);
    }
    return P(0);
}

/// Series of one variable assembled from the table, prefactor included.
inline Polynomial table_series(const std::vector<SeriesTerm>& table, Variable v, Direction d) {
    Polynomial sum;
    for (const auto& t : table) {
        if (t.variable != v || t.direction != d) continue;
        Polynomial term = Polynomial::constant(t.coefficient);
        if (t.s2_pow) term = term * Polynomial::symbol(Symbol::s2, t.s2_pow);
        if (t.kappa_pow) term = term * Polynomial::symbol(Symbol::kappa, t.kappa_pow);
        if (t.sigma_pow) term = term * Polynomial::symbol(Symbol::sigma, t.sigma_pow);
        if (t.trig != Symbol::count) term = term * Polynomial::symbol(t.trig);
        sum += term;
    }
    return prefactor(v) * sum;
}

inline SeriesArguments<Polynomial> symbolic_arguments() {
    using P = Polynomial;
    return {P::symbol(Symbol::c),     P::symbol(Symbol::s2),   P::symbol(Symbol::kappa), P::symbol(Symbol::sigma),
            P::symbol(Symbol::p),     P::symbol(Symbol::Theta), P::symbol(Symbol::sin2), P::symbol(Symbol::cos2),
            P::symbol(Symbol::sin4),  P::symbol(Symbol::cos4)};
}

/// The library's series for direction `d`, expanded symbolically.
inline BasicCorrectionSet<Polynomial> code_series(Direction d) {
    const auto args = symbolic_arguments();
    switch (d) {
        case Direction::both: return series::first_order(args);
        case Direction::direct: return series::second_order_direct(args);
        case Direction::inverse: return series::second_order_inverse(args);
    }
    return {};
}

inline const Polynomial& component(const BasicCorrectionSet<Polynomial>& set, Variable v) {
    switch (v) {
        case Variable::r: return set.dr;
        case Variable::theta: return set.dtheta;
        case Variable::nu: return set.dnu;
        case Variable::R: return set.dR;
        case Variable::Theta: return set.dTheta;
    }
    return set.dN;
}

struct SeriesMismatch {
    Variable variable;
    Direction direction;
    Polynomial difference;  ///< code minus table
};

/// Exact comparison of every series in code against the table. Also
/// reports any non-zero N correction.
inline std::vector<SeriesMismatch> compare_with_table(const std::vector<SeriesTerm>& table) {
    std::vector<SeriesMismatch> out;
    for (Direction d : {Direction::both, Direction::direct, Direction::inverse}) {
        const auto code = code_series(d);
        for (Variable v : kAllVariables) {
            Polynomial diff = component(code, v) - table_series(table, v, d);
            if (!(diff == Polynomial(0))) out.push_back({v, d, std::move(diff)});
        }
        if (!(code.dN == Polynomial(0))) out.push_back({Variable::r, d, code.dN});
    }
    return out;
}

}  // namespace dri::verify
