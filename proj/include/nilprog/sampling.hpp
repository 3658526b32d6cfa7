#pragma once

#include <cstdint>
#include <vector>

#include "nilprog/group.hpp"
#include "nilprog/hp_sequence.hpp"

namespace nilprog {

// xorshift64: small, portable, and fully determined by the seed, so suite
// reports are reproducible byte for byte.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

inline Rational small_rational(Rng& rng) {
    long num = rng.range(-3, 3);
    long den = rng.range(1, 3);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline GroupElement random_element(Rng& rng, const SpecPtr& spec) {
    std::vector<Rational> coords(spec->lie_dim());
    for (auto& c : coords) c = small_rational(rng);
    return GroupElement::from_lie_coords(spec, coords);
}

inline GroupElement random_element_min_weight(Rng& rng, const SpecPtr& spec, int k) {
    std::vector<Rational> coords(spec->lie_dim());
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (spec->coord_weight(i) >= k) coords[i] = small_rational(rng);
    return GroupElement::from_lie_coords(spec, coords);
}

inline HPSequence random_hp_member(Rng& rng, const SpecPtr& spec) {
    auto base = random_element(rng, spec);
    std::vector<GroupElement> coords;
    for (int i = 1; i <= spec->nil_class(); ++i)
        coords.push_back(random_element_min_weight(rng, spec, i));
    return HPSequence(std::move(base), std::move(coords));
}

}  // namespace nilprog
