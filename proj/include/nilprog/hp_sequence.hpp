#pragma once

#include <string>
#include <vector>

#include "nilprog/binomial.hpp"
#include "nilprog/errors.hpp"
#include "nilprog/group.hpp"

namespace nilprog {

// Normal form of a group-valued polynomial sequence
//   n -> base * g_1^C(n,1) * ... * g_s^C(n,s),
// the element type of the Hall-Petresco group when weight(g_i) >= i.
class HPSequence {
public:
    HPSequence(GroupElement base, std::vector<GroupElement> coords)
        : base_(std::move(base)), coords_(std::move(coords)) {
        if (coords_.size() != static_cast<std::size_t>(spec()->nil_class()))
            throw std::invalid_argument("HPSequence: need one coordinate per class level");
        for (const auto& g : coords_) require_same_spec(base_, g);
    }

    static HPSequence identity(const SpecPtr& spec) {
        return constant(GroupElement::identity(spec));
    }

    static HPSequence constant(const GroupElement& g) {
        std::vector<GroupElement> coords(g.spec()->nil_class(), GroupElement::identity(g.spec()));
        return HPSequence(g, std::move(coords));
    }

    // n -> t^n  (g_1 = t, the t* shape)
    static HPSequence power_sequence(const GroupElement& t) {
        auto phi = identity(t.spec());
        phi.coords_[0] = t;
        return phi;
    }

    // n -> g^C(n,k)
    static HPSequence binomial_power(const GroupElement& g, int k) {
        if (k < 1 || k > g.spec()->nil_class())
            throw std::invalid_argument("binomial_power: index outside 1..class");
        auto phi = identity(g.spec());
        phi.coords_[static_cast<std::size_t>(k) - 1] = g;
        return phi;
    }

    // n -> g^{p(n)} for an integer-valued polynomial p of degree <= class.
    // All factors are powers of one element, so they commute and the
    // binomial coefficients of p become the exponents of the normal form.
    static HPSequence from_binomial_poly(const GroupElement& g, const BinomialPoly& p) {
        if (p.degree() > g.spec()->nil_class())
            throw std::invalid_argument("from_binomial_poly: degree exceeds class");
        if (!p.integer_coefficients())
            throw std::invalid_argument("from_binomial_poly: polynomial is not integer-valued");
        auto phi = constant(power(g, Integer(p.coeff(0).get_num())));
        for (int l = 1; l <= p.degree(); ++l)
            phi.coords_[static_cast<std::size_t>(l) - 1] = power(g, Integer(p.coeff(l).get_num()));
        return phi;
    }

    const SpecPtr& spec() const { return base_.spec(); }
    const GroupElement& base() const { return base_; }
    const std::vector<GroupElement>& coords() const { return coords_; }
    const GroupElement& coord(int k) const { return coords_.at(static_cast<std::size_t>(k) - 1); }

    bool operator==(const HPSequence& o) const {
        return base_ == o.base_ && coords_ == o.coords_;
    }
    bool operator!=(const HPSequence& o) const { return !(*this == o); }

private:
    GroupElement base_;
    std::vector<GroupElement> coords_;
};

inline GroupElement hp_eval(const HPSequence& phi, const Integer& n) {
    if (n < 0) throw std::invalid_argument("hp_eval: n must be nonnegative");
    GroupElement v = phi.base();
    for (int k = 1; k <= phi.spec()->nil_class(); ++k) {
        Integer e = binomial(n, static_cast<unsigned long>(k));
        if (e != 0) v = mul(v, power(phi.coord(k), e));
    }
    return v;
}
inline GroupElement hp_eval(const HPSequence& phi, long n) { return hp_eval(phi, Integer(n)); }

// Values phi(0..n_max) through the running Pascal table
// g^C(n+1,j) = g^C(n,j) * g^C(n,j-1); one group product per table cell.
inline std::vector<GroupElement> hp_values(const HPSequence& phi, int n_max) {
    int s = phi.spec()->nil_class();
    std::vector<std::vector<GroupElement>> t;  // t[k][j] = g_k^C(n,j)
    for (int k = 1; k <= s; ++k) {
        std::vector<GroupElement> row;
        row.push_back(phi.coord(k));  // j = 0
        for (int j = 1; j <= k; ++j) row.push_back(GroupElement::identity(phi.spec()));
        t.push_back(std::move(row));
    }
    std::vector<GroupElement> out;
    for (int n = 0; n <= n_max; ++n) {
        GroupElement v = phi.base();
        for (int k = 1; k <= s; ++k) v = mul(v, t[k - 1][k]);
        out.push_back(std::move(v));
        for (int k = 1; k <= s; ++k)
            for (int j = k; j >= 1; --j) t[k - 1][j] = mul(t[k - 1][j], t[k - 1][j - 1]);
    }
    return out;
}

// Greedy triangular extraction of the normal form from values Phi(0..s).
// Entries beyond index s are treated as validation points and must agree
// with the extracted form.
inline HPSequence hp_extract(const std::vector<GroupElement>& values, const SpecPtr& spec) {
    int s = spec->nil_class();
    if (values.size() < static_cast<std::size_t>(s) + 1)
        throw std::invalid_argument("hp_extract: need class+1 values");
    for (const auto& v : values)
        if (!v.spec()->compatible(*spec)) throw SpecMismatch("hp_extract: value from foreign spec");

    GroupElement base = values[0];
    std::vector<GroupElement> coords;
    for (int k = 1; k <= s; ++k) {
        GroupElement prefix = base;
        for (int i = 1; i < k; ++i)
            prefix = mul(prefix, power(coords[static_cast<std::size_t>(i) - 1],
                                       binomial(Integer(k), static_cast<unsigned long>(i))));
        coords.push_back(mul(inverse(prefix), values[static_cast<std::size_t>(k)]));
    }
    HPSequence phi(std::move(base), std::move(coords));

    if (values.size() > static_cast<std::size_t>(s) + 1) {
        auto check = hp_values(phi, static_cast<int>(values.size()) - 1);
        for (std::size_t n = static_cast<std::size_t>(s) + 1; n < values.size(); ++n)
            if (check[n] != values[n])
                throw ValidationMismatch("hp_extract: validation point " + std::to_string(n) +
                                         " disagrees with the extracted normal form");
    }
    return phi;
}

// Pointwise product re-extracted into normal form; the grid 0..2s+1 doubles
// as the validation set.
inline HPSequence hp_mul(const HPSequence& phi, const HPSequence& psi) {
    if (!phi.spec()->compatible(*psi.spec())) throw SpecMismatch("hp_mul: spec mismatch");
    int s = phi.spec()->nil_class();
    auto a = hp_values(phi, 2 * s + 1);
    auto b = hp_values(psi, 2 * s + 1);
    std::vector<GroupElement> prod;
    prod.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) prod.push_back(mul(a[i], b[i]));
    return hp_extract(prod, phi.spec());
}

inline HPSequence hp_inverse(const HPSequence& phi) {
    int s = phi.spec()->nil_class();
    auto a = hp_values(phi, 2 * s + 1);
    std::vector<GroupElement> inv;
    inv.reserve(a.size());
    for (const auto& v : a) inv.push_back(inverse(v));
    return hp_extract(inv, phi.spec());
}

inline HPSequence hp_commutator(const HPSequence& phi, const HPSequence& psi) {
    if (!phi.spec()->compatible(*psi.spec())) throw SpecMismatch("hp_commutator: spec mismatch");
    int s = phi.spec()->nil_class();
    auto a = hp_values(phi, 2 * s + 1);
    auto b = hp_values(psi, 2 * s + 1);
    std::vector<GroupElement> comm;
    comm.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) comm.push_back(commutator(a[i], b[i]));
    return hp_extract(comm, phi.spec());
}

// Largest d <= s with: base and g_1..g_d of weight >= d, g_i of weight >= i
// beyond d. Returns 0 when the sequence is not in HP(G) at all.
inline int hp_level(const HPSequence& phi) {
    int s = phi.spec()->nil_class();
    for (int d = s; d >= 1; --d) {
        bool ok = weight(phi.base()).at_least(d);
        for (int i = 1; ok && i <= s; ++i)
            ok = weight(phi.coord(i)).at_least(i <= d ? d : i);
        if (ok) return d;
    }
    return 0;
}

inline std::string coords_str(const GroupElement& g) {
    std::string out = "(";
    auto c = g.coords();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ",";
        out += c[i].get_str();
    }
    return out + ")";
}

inline std::string hp_str(const HPSequence& phi) {
    std::string out = coords_str(phi.base());
    for (int k = 1; k <= phi.spec()->nil_class(); ++k) {
        if (phi.coord(k).is_identity()) continue;
        out += " * " + coords_str(phi.coord(k)) + "^C(n," + std::to_string(k) + ")";
    }
    return out;
}

}  // namespace nilprog
