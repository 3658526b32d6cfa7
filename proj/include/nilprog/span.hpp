#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilprog/errors.hpp"
#include "nilprog/group.hpp"
#include "nilprog/hp_sequence.hpp"

namespace nilprog {

// Membership of candidate sequences in the divisible subgroup generated by a
// family of sequences, after projection to the value tuples at n = 1..l.
//
// Logarithms identify the divisible hull with the Lie subalgebra generated by
// the generator logarithms (the models here are rational-coordinate and
// torsion-free, so the correspondence is exact). The subalgebra is closed out
// by iterated brackets with the span maintained in exact echelon form;
// membership is a rational linear solve, and the witness is rebuilt lowest
// weight first with tail correction, one layer at a time.

struct SpanBasisVector {
    std::string name;        // v1, v2, ...
    std::string definition;  // "g3" or "[v1,v2]"
    std::vector<Rational> vec;
};

struct SpanWitnessTerm {
    Rational coeff;
    // linear combination of closure vectors defining the exp'd direction
    std::vector<std::pair<Rational, std::string>> direction;
};

struct SpanWitness {
    // candidate = prod over layers (ascending weight) of prod_j exp(coeff_j * direction_j)
    std::vector<std::pair<int, std::vector<SpanWitnessTerm>>> layers;
};

struct SpanCheckResult {
    bool ok = false;
    std::vector<SpanBasisVector> basis;  // bracket closure with definitions
    std::vector<SpanWitness> witnesses;  // one per candidate when ok
    std::optional<std::size_t> failed_candidate;
    std::optional<int> failed_layer;
};

namespace detail {

// Exact reduced row echelon form over the rationals with columns visited in
// weight order. Every row remembers the combination of inserted closure
// vectors it represents.
class LayeredEchelon {
public:
    explicit LayeredEchelon(std::vector<int> column_weight)
        : col_weight_(std::move(column_weight)) {
        cols_.resize(col_weight_.size());
        for (std::size_t i = 0; i < cols_.size(); ++i) cols_[i] = i;
        std::stable_sort(cols_.begin(), cols_.end(), [&](std::size_t a, std::size_t b) {
            return col_weight_[a] < col_weight_[b];
        });
    }

    using Combo = std::vector<std::pair<Rational, std::string>>;

    std::vector<Rational> reduce(std::vector<Rational> v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            Rational factor = v[lead_[r]];
            if (factor == 0) continue;
            for (std::size_t c = 0; c < v.size(); ++c) v[c] -= factor * rows_[r][c];
        }
        return v;
    }

    bool contains(const std::vector<Rational>& v) const {
        for (const auto& q : reduce(v))
            if (q != 0) return false;
        return true;
    }

    bool insert(std::vector<Rational> v, const std::string& source_name) {
        Combo combo{{Rational(1), source_name}};
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            Rational factor = v[lead_[r]];
            if (factor == 0) continue;
            for (std::size_t c = 0; c < v.size(); ++c) v[c] -= factor * rows_[r][c];
            combo_subtract(combo, factor, combos_[r]);
        }
        std::size_t lead = npos();
        for (std::size_t c : cols_)
            if (v[c] != 0) {
                lead = c;
                break;
            }
        if (lead == npos()) return false;
        Rational inv = 1 / v[lead];
        for (auto& q : v) q *= inv;
        combo_scale(combo, inv);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            Rational f = rows_[r][lead];
            if (f == 0) continue;
            for (std::size_t c = 0; c < v.size(); ++c) rows_[r][c] -= f * v[c];
            combo_subtract(combos_[r], f, combo);
        }
        rows_.push_back(std::move(v));
        lead_.push_back(lead);
        combos_.push_back(std::move(combo));
        return true;
    }

    std::size_t dim() const { return rows_.size(); }
    const std::vector<Rational>& row(std::size_t r) const { return rows_[r]; }
    const Combo& combo(std::size_t r) const { return combos_[r]; }
    std::size_t lead_col(std::size_t r) const { return lead_[r]; }
    int lead_weight(std::size_t r) const { return col_weight_[lead_[r]]; }

private:
    static std::size_t npos() { return static_cast<std::size_t>(-1); }

    static void combo_scale(Combo& a, const Rational& q) {
        for (auto& [c, n] : a) c *= q;
    }
    // a -= factor * b
    static void combo_subtract(Combo& a, const Rational& factor, const Combo& b) {
        for (const auto& [c, n] : b) {
            bool found = false;
            for (auto& [ca, na] : a)
                if (na == n) {
                    ca -= factor * c;
                    found = true;
                    break;
                }
            if (!found) a.emplace_back(-factor * c, n);
        }
        a.erase(std::remove_if(a.begin(), a.end(), [](const auto& t) { return t.first == 0; }),
                a.end());
    }

    std::vector<int> col_weight_;
    std::vector<std::size_t> cols_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> lead_;
    std::vector<Combo> combos_;
};

}  // namespace detail

inline SpanCheckResult filtration_span_check(const std::vector<HPSequence>& generators,
                                             const std::vector<HPSequence>& candidates,
                                             int truncation, int depth = 0) {
    if (generators.empty()) throw std::invalid_argument("filtration_span_check: no generators");
    if (truncation < 1 || truncation > 8)
        throw std::invalid_argument("filtration_span_check: truncation must be in 1..8");
    const SpecPtr& spec = generators.front().spec();
    for (const auto& phi : generators)
        if (!phi.spec()->compatible(*spec)) throw SpecMismatch("filtration_span_check");
    for (const auto& phi : candidates)
        if (!phi.spec()->compatible(*spec)) throw SpecMismatch("filtration_span_check");

    const int s = spec->nil_class();
    if (depth <= 0) depth = 2 * s;
    const std::size_t block = spec->lie_dim();
    const std::size_t l = static_cast<std::size_t>(truncation);

    auto tuple_values = [&](const HPSequence& phi) {
        auto all = hp_values(phi, truncation);
        return std::vector<GroupElement>(all.begin() + 1, all.end());  // n = 1..l
    };
    auto tuple_log = [&](const std::vector<GroupElement>& vals) {
        std::vector<Rational> out;
        out.reserve(block * vals.size());
        for (const auto& g : vals)
            for (auto& q : g.lie_coords()) out.push_back(std::move(q));
        return out;
    };
    auto tuple_bracket = [&](const std::vector<Rational>& u, const std::vector<Rational>& v) {
        std::vector<Rational> out;
        out.reserve(u.size());
        for (std::size_t n = 0; n < l; ++n) {
            std::vector<Rational> ub(u.begin() + n * block, u.begin() + (n + 1) * block);
            std::vector<Rational> vb(v.begin() + n * block, v.begin() + (n + 1) * block);
            for (auto& q : lie_bracket(*spec, ub, vb)) out.push_back(std::move(q));
        }
        return out;
    };

    std::vector<int> col_weight(block * l);
    for (std::size_t n = 0; n < l; ++n)
        for (std::size_t k = 0; k < block; ++k)
            col_weight[n * block + k] = spec->coord_weight(k);

    SpanCheckResult result;
    detail::LayeredEchelon ech(col_weight);
    std::vector<SpanBasisVector> kept;

    auto try_add = [&](std::vector<Rational> vec, const std::string& definition) {
        std::string name = "v" + std::to_string(kept.size() + 1);
        if (!ech.insert(vec, name)) return false;
        kept.push_back({std::move(name), definition, std::move(vec)});
        return true;
    };

    for (std::size_t i = 0; i < generators.size(); ++i)
        try_add(tuple_log(tuple_values(generators[i])), "g" + std::to_string(i + 1));

    // bracket closure; one round processes every pair not seen before
    std::size_t processed = 0;
    int round = 0;
    while (processed < kept.size()) {
        if (round++ >= depth)
            throw DepthExceeded("filtration_span_check: closure still growing after " +
                                std::to_string(depth) + " rounds");
        std::size_t upto = kept.size();
        for (std::size_t i = processed; i < upto; ++i)
            for (std::size_t j = 0; j < i; ++j)
                try_add(tuple_bracket(kept[i].vec, kept[j].vec),
                        "[" + kept[i].name + "," + kept[j].name + "]");
        processed = upto;
    }

    result.basis = kept;

    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
        auto vals = tuple_values(candidates[ci]);
        auto cand_log = tuple_log(vals);
        if (!ech.contains(cand_log)) {
            result.ok = false;
            result.failed_candidate = ci;
            auto residue = ech.reduce(cand_log);
            for (int w = 1; w <= s && !result.failed_layer; ++w)
                for (std::size_t c = 0; c < residue.size(); ++c)
                    if (col_weight[c] == w && residue[c] != 0) {
                        result.failed_layer = w;
                        break;
                    }
            result.witnesses.clear();
            return result;
        }

        // lowest weight first: match the layer-w block with echelon rows whose
        // lead sits in layer w (their coefficient is read off at the lead
        // column), divide the matched product out, recurse on the tail.
        SpanWitness witness;
        std::vector<GroupElement> rem = vals;
        for (int w = 1; w <= s; ++w) {
            auto rem_log = tuple_log(rem);
            std::vector<SpanWitnessTerm> terms;
            std::vector<GroupElement> correction(l, GroupElement::identity(spec));
            bool any = false;
            for (std::size_t r = 0; r < ech.dim(); ++r) {
                if (ech.lead_weight(r) != w) continue;
                Rational q = rem_log[ech.lead_col(r)];
                if (q == 0) continue;
                any = true;
                for (std::size_t n = 0; n < l; ++n) {
                    std::vector<Rational> blockv(ech.row(r).begin() + n * block,
                                                 ech.row(r).begin() + (n + 1) * block);
                    for (auto& x : blockv) x *= q;
                    correction[n] = mul(correction[n], GroupElement::from_lie_coords(spec, blockv));
                }
                terms.push_back({q, ech.combo(r)});
            }
            if (!any) {
                for (std::size_t c = 0; c < rem_log.size(); ++c)
                    if (col_weight[c] == w && rem_log[c] != 0)
                        throw Error("filtration_span_check: layer solve failed unexpectedly");
                continue;
            }
            for (std::size_t n = 0; n < l; ++n) rem[n] = mul(inverse(correction[n]), rem[n]);
            // the layer must be fully cleared now
            auto after = tuple_log(rem);
            for (std::size_t c = 0; c < after.size(); ++c)
                if (col_weight[c] <= w && after[c] != 0)
                    throw Error("filtration_span_check: tail correction left layer residue");
            witness.layers.emplace_back(w, std::move(terms));
        }
        for (const auto& g : rem)
            if (!g.is_identity())
                throw Error("filtration_span_check: witness reconstruction left a residue");
        result.witnesses.push_back(std::move(witness));
    }
    result.ok = true;
    return result;
}

}  // namespace nilprog
