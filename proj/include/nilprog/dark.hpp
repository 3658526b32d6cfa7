#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nilprog/binomial.hpp"
#include "nilprog/errors.hpp"
#include "nilprog/group.hpp"
#include "nilprog/hp_sequence.hpp"

namespace nilprog {

// Ordered expansion of a product of polynomial powers in multi-binomial
// coefficients: Phi(n_1..n_r) = prod over the index set of
// z_{l_1..l_r}^{C(n_1,l_1)...C(n_r,l_r)}, indices in lexicographic order.
// Every z at index sum w is guaranteed weight >= w.
struct MultiIndexExpansion {
    SpecPtr spec;
    int arity = 1;
    std::string ordering = "lex";  // the fixed linear order used for the product
    std::map<std::vector<int>, GroupElement> table;

    const GroupElement& at(const std::vector<int>& index) const {
        auto it = table.find(index);
        if (it == table.end()) throw std::out_of_range("MultiIndexExpansion::at");
        return it->second;
    }

    // Reconstruct Phi at a grid point from the stored coefficients.
    GroupElement reconstruct(const std::vector<int>& n) const {
        GroupElement v = GroupElement::identity(spec);
        for (const auto& [index, z] : table) {  // map order = lex order
            Integer e = 1;
            for (int i = 0; i < arity; ++i)
                e *= binomial(Integer(n[static_cast<std::size_t>(i)]),
                              static_cast<unsigned long>(index[static_cast<std::size_t>(i)]));
            if (e != 0) v = mul(v, power(z, e));
        }
        return v;
    }
};

using GridFn = std::function<GroupElement(const std::vector<int>&)>;

namespace detail {

inline void enumerate_grid(int arity, int top, const std::function<void(std::vector<int>&)>& fn) {
    std::vector<int> idx(static_cast<std::size_t>(arity), 0);
    while (true) {
        fn(idx);
        int i = arity - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == top) {
            idx[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
    }
}

// Greedy triangular solve on the grid {0..s}^r in lexicographic order.
// The index set of the product at a grid point n is the box [0,n]; its
// lexicographic maximum is n itself, so each z is isolated by its own point.
inline MultiIndexExpansion dark_solve(const SpecPtr& spec, int arity, const GridFn& value) {
    int s = spec->nil_class();
    MultiIndexExpansion out;
    out.spec = spec;
    out.arity = arity;

    std::map<std::vector<int>, GroupElement> values;
    enumerate_grid(arity, s, [&](std::vector<int>& n) { values.emplace(n, value(n)); });

    enumerate_grid(arity, s, [&](std::vector<int>& l) {
        GroupElement prefix = GroupElement::identity(spec);
        for (const auto& [lp, z] : out.table) {
            Integer e = 1;
            for (int i = 0; i < arity; ++i)
                e *= binomial(Integer(l[static_cast<std::size_t>(i)]),
                              static_cast<unsigned long>(lp[static_cast<std::size_t>(i)]));
            if (e != 0) prefix = mul(prefix, power(z, e));
        }
        GroupElement z = mul(inverse(prefix), values.at(l));
        int index_sum = 0;
        for (int c : l) index_sum += c;
        if (!weight(z).at_least(index_sum)) {
            std::string where;
            for (int c : l) where += (where.empty() ? "" : ",") + std::to_string(c);
            throw WeightViolation("dark_expand: z_{" + where + "} has weight below " +
                                  std::to_string(index_sum) +
                                  " (an input exponent exceeds its element's weight)");
        }
        out.table.emplace(l, std::move(z));
    });
    return out;
}

}  // namespace detail

// r = 1: exponents are explicit integer-valued polynomials.
inline MultiIndexExpansion dark_expand(
    const std::vector<std::pair<GroupElement, BinomialPoly>>& factors) {
    if (factors.empty()) throw std::invalid_argument("dark_expand: no factors");
    const SpecPtr& spec = factors.front().first.spec();
    for (const auto& [g, p] : factors) {
        if (!g.spec()->compatible(*spec)) throw SpecMismatch("dark_expand: spec mismatch");
        if (!p.integer_coefficients())
            throw std::invalid_argument("dark_expand: exponent polynomial is not integer-valued");
        if (p.degree() > spec->nil_class())
            throw std::invalid_argument("dark_expand: exponent degree exceeds the class");
    }
    auto value = [&](const std::vector<int>& n) {
        GroupElement v = GroupElement::identity(spec);
        for (const auto& [g, p] : factors) {
            Rational e = p.eval(n[0]);
            v = mul(v, power(g, Integer(e.get_num())));
        }
        return v;
    };
    return detail::dark_solve(spec, 1, value);
}

// r in {2,3}: exponents supplied as evaluation callbacks on the grid.
inline MultiIndexExpansion dark_expand(
    const std::vector<std::pair<GroupElement, std::function<Integer(const std::vector<int>&)>>>&
        factors,
    int arity) {
    if (arity < 1 || arity > 3) throw std::invalid_argument("dark_expand: arity must be 1..3");
    if (factors.empty()) throw std::invalid_argument("dark_expand: no factors");
    const SpecPtr& spec = factors.front().first.spec();
    for (const auto& [g, p] : factors)
        if (!g.spec()->compatible(*spec)) throw SpecMismatch("dark_expand: spec mismatch");
    auto value = [&](const std::vector<int>& n) {
        GroupElement v = GroupElement::identity(spec);
        for (const auto& [g, p] : factors) v = mul(v, power(g, p(n)));
        return v;
    };
    return detail::dark_solve(spec, arity, value);
}

// Rewrites z^{C(n,l_1)...C(n,l_d)} as w_l^{n^l} ... w_1^{n^1} with
// w = root(z, l_1!...l_d!) and w_j = w^{a_j}, a_j the monomial coefficients of
// the expanded product. Entries below j = d come out as the identity.
// Returns (w_1, ..., w_l).
inline std::vector<GroupElement> power_decompose(const GroupElement& z,
                                                 const std::vector<int>& indices) {
    if (indices.empty()) throw std::invalid_argument("power_decompose: empty index list");
    long l = 0;
    for (int li : indices) {
        if (li < 1) throw std::invalid_argument("power_decompose: indices must be >= 1");
        l += li;
    }
    int s = z.spec()->nil_class();
    if (z.is_identity())
        return std::vector<GroupElement>(static_cast<std::size_t>(l),
                                         GroupElement::identity(z.spec()));
    if (!weight(z).at_least(static_cast<int>(l)))
        throw CommutationUnsafe("power_decompose: weight(z) below the index sum " +
                                std::to_string(l));
    int central_floor = (s + 2) / 2;  // ceil((s+1)/2)
    if (!weight(z).at_least(central_floor))
        throw CommutationUnsafe("power_decompose: weight(z) below the centrality floor " +
                                std::to_string(central_floor));

    long fac = 1;
    for (int li : indices) fac *= factorial(static_cast<unsigned long>(li)).get_si();
    GroupElement w = root(z, fac);
    auto monomials = binomial_product_expand(indices);  // degree l, monic, no constant term
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(l));
    for (long j = 1; j <= l; ++j)
        out.push_back(power(w, Integer(monomials[static_cast<std::size_t>(j)].get_num())));
    return out;
}

}  // namespace nilprog
