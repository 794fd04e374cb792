#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace dri::verify {

using Rational = boost::rational<std::int64_t>;

/// Symbols appearing in the short-period series.
enum class Symbol : int { c, s2, kappa, sigma, p, Theta, sin2, cos2, sin4, cos4, count };

inline constexpr const char* kSymbolNames[] = {"c", "s2", "kappa", "sigma", "p", "Theta",
                                               "sin2", "cos2", "sin4", "cos4"};

inline constexpr int kSymbolCount = static_cast<int>(Symbol::count);

/// Exponent vector of a Laurent monomial.
using Monomial = std::array<int, kSymbolCount>;

/// Sparse Laurent polynomial with exact rational coefficients. Provides just
/// enough arithmetic to instantiate the series templates: ring operations and
/// division by a single term.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(long value) {  // NOLINT: implicit, mirrors T(n) in the series
        if (value != 0) terms_[Monomial{}] = Rational(value);
    }

    static Polynomial constant(Rational value) {
        Polynomial out;
        if (value.numerator() != 0) out.terms_[Monomial{}] = value;
        return out;
    }

    static Polynomial symbol(Symbol s, int power = 1) {
        Polynomial out;
        Monomial m{};
        m[static_cast<int>(s)] = power;
        out.terms_[m] = Rational(1);
        return out;
    }

    const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) {
        for (auto& [m, k] : a.terms_) k = -k;
        return a;
    }

    Polynomial& operator+=(const Polynomial& b) {
        for (const auto& [m, k] : b.terms_) accumulate(m, k);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& b) {
        for (const auto& [m, k] : b.terms_) accumulate(m, -k);
        return *this;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out;
        for (const auto& [ma, ka] : a.terms_)
            for (const auto& [mb, kb] : b.terms_) {
                Monomial m;
                for (int i = 0; i < kSymbolCount; ++i) m[i] = ma[i] + mb[i];
                out.accumulate(m, ka * kb);
            }
        return out;
    }

    friend Polynomial operator/(const Polynomial& a, const Polynomial& b) {
        if (b.terms_.size() != 1) throw std::domain_error("Polynomial: division by a multi-term polynomial");
        const auto& [mb, kb] = *b.terms_.begin();
        Polynomial out;
        for (const auto& [ma, ka] : a.terms_) {
            Monomial m;
            for (int i = 0; i < kSymbolCount; ++i) m[i] = ma[i] - mb[i];
            out.accumulate(m, ka / kb);
        }
        return out;
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& poly) {
        if (poly.terms_.empty()) return os << "0";
        bool first = true;
        for (const auto& [m, k] : poly.terms_) {
            os << (first ? "" : " + ") << k;
            for (int i = 0; i < kSymbolCount; ++i)
                if (m[i] != 0) os << '*' << kSymbolNames[i] << (m[i] != 1 ? "^" + std::to_string(m[i]) : "");
            first = false;
        }
        return os;
    }

private:
    void accumulate(const Monomial& m, const Rational& k) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (k.numerator() != 0) terms_.emplace(m, k);
            return;
        }
        it->second += k;
        if (it->second.numerator() == 0) terms_.erase(it);
    }

    std::map<Monomial, Rational> terms_;
};

}  // namespace dri::verify
