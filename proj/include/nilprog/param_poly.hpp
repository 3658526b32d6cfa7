#pragma once

#include <array>
#include <map>
#include <string>

#include "nilprog/rational.hpp"

namespace nilprog {

// The formal parameters of the torus models.
inline constexpr int kNumParams = 4;
inline constexpr std::array<const char*, kNumParams> kParamNames = {"alpha", "a", "b", "beta"};

enum class Param : int { Alpha = 0, A = 1, B = 2, Beta = 3 };

// Exact polynomial in the formal parameters with rational coefficients.
// Keys are exponent vectors; the zero vector carries the rational constant.
class ParamPoly {
public:
    using Monomial = std::array<int, kNumParams>;

    ParamPoly() = default;

    static ParamPoly constant(Rational q) {
        ParamPoly p;
        if (q != 0) p.terms_[Monomial{}] = std::move(q);
        return p;
    }

    static ParamPoly param(Param which, Rational coeff = 1) {
        ParamPoly p;
        Monomial m{};
        m[static_cast<int>(which)] = 1;
        if (coeff != 0) p.terms_[m] = std::move(coeff);
        return p;
    }

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational constant_part() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
    }

    ParamPoly& operator+=(const ParamPoly& o) {
        for (const auto& [m, c] : o.terms_) {
            auto& slot = terms_[m];
            slot += c;
            if (slot == 0) terms_.erase(m);
        }
        return *this;
    }
    ParamPoly& operator-=(const ParamPoly& o) {
        for (const auto& [m, c] : o.terms_) {
            auto& slot = terms_[m];
            slot -= c;
            if (slot == 0) terms_.erase(m);
        }
        return *this;
    }
    friend ParamPoly operator+(ParamPoly x, const ParamPoly& y) { return x += y; }
    friend ParamPoly operator-(ParamPoly x, const ParamPoly& y) { return x -= y; }

    ParamPoly operator-() const {
        ParamPoly p = *this;
        for (auto& [m, c] : p.terms_) c = -c;
        return p;
    }

    ParamPoly& operator*=(const Rational& q) {
        if (q == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= q;
        return *this;
    }
    friend ParamPoly operator*(ParamPoly x, const Rational& q) { return x *= q; }

    friend ParamPoly operator*(const ParamPoly& x, const ParamPoly& y) {
        ParamPoly r;
        for (const auto& [mx, cx] : x.terms_)
            for (const auto& [my, cy] : y.terms_) {
                Monomial m{};
                for (int i = 0; i < kNumParams; ++i) m[i] = mx[i] + my[i];
                auto& slot = r.terms_[m];
                slot += cx * cy;
                if (slot == 0) r.terms_.erase(m);
            }
        return r;
    }

    bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const ParamPoly& o) const { return !(*this == o); }

    Rational subst(const std::array<Rational, kNumParams>& values) const {
        Rational sum = 0;
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < kNumParams; ++i)
                for (int e = 0; e < m[i]; ++e) t *= values[static_cast<std::size_t>(i)];
            sum += t;
        }
        return sum;
    }

    double subst(const std::array<double, kNumParams>& values) const {
        double sum = 0;
        for (const auto& [m, c] : terms_) {
            double t = c.get_d();
            for (int i = 0; i < kNumParams; ++i)
                for (int e = 0; e < m[i]; ++e) t *= values[static_cast<std::size_t>(i)];
            sum += t;
        }
        return sum;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            std::string mono;
            for (int i = 0; i < kNumParams; ++i)
                for (int e = 0; e < m[i]; ++e) mono += std::string("*") + kParamNames[i];
            out += c.get_str() + mono;
        }
        return out;
    }

private:
    std::map<Monomial, Rational> terms_;
};

inline ParamPoly alpha() { return ParamPoly::param(Param::Alpha); }
inline ParamPoly param_a() { return ParamPoly::param(Param::A); }
inline ParamPoly param_b() { return ParamPoly::param(Param::B); }
inline ParamPoly beta() { return ParamPoly::param(Param::Beta); }

}  // namespace nilprog
