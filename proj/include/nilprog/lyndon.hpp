#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "nilprog/errors.hpp"
#include "nilprog/tensor.hpp"

namespace nilprog {

// Lyndon words over {0..rank-1} of length <= cap, emitted in lexicographic
// order (Duval / FKM enumeration).
inline std::vector<std::vector<int>> lyndon_words(int rank, int cap) {
    std::vector<std::vector<int>> out;
    std::vector<int> w{0};
    while (true) {
        out.push_back(w);
        std::vector<int> t;
        while (static_cast<int>(t.size()) < cap) t.push_back(w[t.size() % w.size()]);
        while (!t.empty() && t.back() == rank - 1) t.pop_back();
        if (t.empty()) break;
        t.back() += 1;
        w = t;
    }
    return out;
}

// Standard factorization w = uv with v the lexicographically least proper
// suffix. Both halves are Lyndon again.
inline std::pair<std::vector<int>, std::vector<int>> standard_factorization(
    const std::vector<int>& w) {
    std::size_t best = 1;
    for (std::size_t i = 2; i < w.size(); ++i) {
        if (std::lexicographical_compare(w.begin() + i, w.end(), w.begin() + best, w.end()))
            best = i;
    }
    return {std::vector<int>(w.begin(), w.begin() + best),
            std::vector<int>(w.begin() + best, w.end())};
}

// Right-normed bracket expansion of a Lyndon word in the tensor algebra.
// The result is w plus integer multiples of lexicographically larger words
// of the same length; that triangularity drives lie_coordinates below.
inline TensorPoly lyndon_expansion(const WordTable& table, const std::vector<int>& w) {
    if (w.size() == 1) {
        TensorPoly p(table);
        p[table.index_of_letters(w)] = 1;
        return p;
    }
    auto [u, v] = standard_factorization(w);
    return commutator_poly(lyndon_expansion(table, u), lyndon_expansion(table, v));
}

inline std::string lyndon_label(const std::vector<int>& w) {
    if (w.size() == 1) return "x" + std::to_string(w[0] + 1);
    auto [u, v] = standard_factorization(w);
    return "[" + lyndon_label(u) + "," + lyndon_label(v) + "]";
}

// The Lyndon (Hall) basis of the free Lie algebra on `rank` letters truncated
// at degree `cap`, with precomputed tensor expansions.
struct LyndonBasis {
    std::vector<std::vector<int>> words;          // sorted by (length, lex)
    std::vector<int> weights;                     // word lengths
    std::vector<std::string> labels;              // bracket strings
    std::vector<TensorPoly> expansions;           // aligned with words
    std::map<std::size_t, std::size_t> position;  // word index -> basis position

    LyndonBasis(const WordTable& table, int rank, int cap) {
        words = lyndon_words(rank, cap);
        std::sort(words.begin(), words.end(), [](const auto& a, const auto& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
        for (std::size_t i = 0; i < words.size(); ++i) {
            const auto& w = words[i];
            weights.push_back(static_cast<int>(w.size()));
            labels.push_back(lyndon_label(w));
            expansions.push_back(lyndon_expansion(table, w));
            std::size_t idx = table.index_of_letters(w);
            position[idx] = i;
            if (expansions.back()[idx] != 1)
                throw Error("lyndon basis: expansion is not unitriangular");
        }
    }

    std::size_t dim() const { return words.size(); }
};

// Coordinates of a Lie element with respect to the Lyndon basis, by repeated
// elimination of the least surviving word per degree. Rejects non-Lie input.
inline std::vector<Rational> lie_coordinates(const WordTable& table, const LyndonBasis& basis,
                                             TensorPoly p) {
    if (p[0] != 0) throw Error("lie_coordinates: nonzero constant term");
    std::vector<Rational> coords(basis.dim());
    for (int d = 1; d <= table.cap(); ++d) {
        std::size_t off = table.offset(d);
        for (std::size_t v = 0; v < table.count(d); ++v) {
            std::size_t idx = off + v;
            if (p[idx] == 0) continue;
            auto it = basis.position.find(idx);
            if (it == basis.position.end())
                throw Error("lie_coordinates: not a Lie element (stray word survives)");
            Rational c = p[idx];
            coords[it->second] = c;
            const TensorPoly& exp = basis.expansions[it->second];
            for (std::size_t j = idx; j < off + table.count(d); ++j)
                if (exp[j] != 0) p[j] -= c * exp[j];
        }
    }
    if (!p.is_zero()) throw Error("lie_coordinates: residue after elimination");
    return coords;
}

}  // namespace nilprog
