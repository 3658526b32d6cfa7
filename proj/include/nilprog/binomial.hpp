#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilprog/errors.hpp"
#include "nilprog/rational.hpp"

namespace nilprog {

inline constexpr int kBinomialDegreeCap = 12;

// Integer-valued polynomial in the binomial basis C(n,0), C(n,1), ...
// Coefficients stay exact rationals; integrality is asserted where the
// construction guarantees it, never assumed.
class BinomialPoly {
public:
    BinomialPoly() = default;

    explicit BinomialPoly(std::map<int, Rational> coeffs) : coeffs_(std::move(coeffs)) {
        prune();
    }

    static BinomialPoly zero() { return BinomialPoly(); }

    static BinomialPoly basis(int l, Rational c = 1) {
        BinomialPoly p;
        p.coeffs_[l] = std::move(c);
        p.prune();
        return p;
    }

    const std::map<int, Rational>& coeffs() const { return coeffs_; }

    Rational coeff(int l) const {
        auto it = coeffs_.find(l);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    int degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }
    bool is_zero() const { return coeffs_.empty(); }

    bool integer_coefficients() const {
        for (const auto& [l, c] : coeffs_)
            if (!is_integral(c)) return false;
        return true;
    }

    BinomialPoly& operator+=(const BinomialPoly& o) {
        for (const auto& [l, c] : o.coeffs_) coeffs_[l] += c;
        prune();
        return *this;
    }
    friend BinomialPoly operator+(BinomialPoly a, const BinomialPoly& b) { return a += b; }

    BinomialPoly& operator*=(const Rational& q) {
        for (auto& [l, c] : coeffs_) c *= q;
        prune();
        return *this;
    }

    Rational eval(const Integer& n) const {
        Rational sum = 0;
        for (const auto& [l, c] : coeffs_) sum += c * Rational(binomial(n, l));
        return sum;
    }
    Rational eval(long n) const { return eval(Integer(n)); }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (const auto& [l, c] : coeffs_) {
            if (!out.empty()) out += " + ";
            if (l == 0) {
                out += c.get_str();
            } else {
                out += c.get_str() + "*C(n," + std::to_string(l) + ")";
            }
        }
        return out;
    }

private:
    void prune() {
        for (auto it = coeffs_.begin(); it != coeffs_.end();)
            it = (it->second == 0) ? coeffs_.erase(it) : std::next(it);
    }

    std::map<int, Rational> coeffs_;
};

// Binomial-basis coefficients b_1..b_d of n^d, via the Stirling recurrence
// b_{d,l} = l * (b_{d-1,l} + b_{d-1,l-1}); b_0 vanishes.
inline BinomialPoly monomial_to_binomial(int d) {
    if (d < 1 || d > kBinomialDegreeCap)
        throw std::invalid_argument("monomial_to_binomial: degree out of range [1,12]");
    std::vector<Integer> b(static_cast<std::size_t>(d) + 1);
    b[1] = 1;  // n^1 = C(n,1)
    for (int deg = 2; deg <= d; ++deg) {
        std::vector<Integer> next(static_cast<std::size_t>(d) + 1);
        for (int l = 1; l <= deg; ++l)
            next[l] = Integer(l) * (b[l] + b[l - 1]);
        b = std::move(next);
    }
    std::map<int, Rational> coeffs;
    for (int l = 1; l <= d; ++l) coeffs[l] = Rational(b[l]);
    BinomialPoly p(std::move(coeffs));
    if (!p.integer_coefficients()) throw Error("monomial_to_binomial: non-integer coefficient");
    return p;
}

// Convert a polynomial given by monomial coefficients (index = power of n)
// into the binomial basis. Integrality of the result is reported, not forced.
inline BinomialPoly monomials_to_binomial(const std::vector<Rational>& monomial_coeffs) {
    BinomialPoly p;
    for (std::size_t d = 0; d < monomial_coeffs.size(); ++d) {
        const Rational& c = monomial_coeffs[d];
        if (c == 0) continue;
        if (d == 0) {
            p += BinomialPoly::basis(0, c);
        } else {
            BinomialPoly m = monomial_to_binomial(static_cast<int>(d));
            m *= c;
            p += m;
        }
    }
    return p;
}

// Monomial coefficients of l_1! ... l_d! * C(n,l_1) ... C(n,l_d): a monic
// integer polynomial of degree sum(l_i) with zero constant term.
inline std::vector<Rational> binomial_product_expand(const std::vector<int>& indices) {
    if (indices.empty()) throw std::invalid_argument("binomial_product_expand: empty index list");
    long total = 0;
    for (int l : indices) {
        if (l < 1) throw std::invalid_argument("binomial_product_expand: indices must be >= 1");
        total += l;
    }
    if (total > kBinomialDegreeCap)
        throw Error("binomial_product_expand: total degree exceeds cap of 12");
    // l! * C(n,l) is the falling factorial n (n-1) ... (n-l+1)
    std::vector<Rational> poly{1};
    for (int l : indices) {
        for (int i = 0; i < l; ++i) {
            std::vector<Rational> next(poly.size() + 1);
            for (std::size_t k = 0; k < poly.size(); ++k) {
                next[k + 1] += poly[k];
                next[k] -= Rational(i) * poly[k];
            }
            poly = std::move(next);
        }
    }
    if (poly.back() != 1) throw Error("binomial_product_expand: result is not monic");
    if (poly[0] != 0) throw Error("binomial_product_expand: nonzero constant term");
    for (const auto& c : poly)
        if (!is_integral(c)) throw Error("binomial_product_expand: non-integer coefficient");
    return poly;
}

}  // namespace nilprog
