#pragma once

#include "nilprog/torus.hpp"

namespace nilprog {

// The 2-step nilpotent Lie group Z x T x T with multiplication
// (k,x,y)(k',x',y') = (k+k', x+x', y+y'+2kx'); its commutator subgroup is
// {0} x {0} x T and the lattice Z x {0} x {0} is cocompact.
struct ExampleGroupElement {
    long k = 0;
    TorusWord x;
    TorusWord y;

    static ExampleGroupElement identity() { return {}; }

    bool operator==(const ExampleGroupElement& o) const {
        return k == o.k && torus_equal(x, o.x) && torus_equal(y, o.y);
    }
};

inline ExampleGroupElement example_group_mul(const ExampleGroupElement& p,
                                             const ExampleGroupElement& q) {
    ExampleGroupElement r;
    r.k = p.k + q.k;
    r.x = p.x + q.x;
    r.y = p.y + q.y + q.x * Rational(2 * p.k);
    return r;
}

inline ExampleGroupElement example_group_inverse(const ExampleGroupElement& p) {
    ExampleGroupElement r;
    r.k = -p.k;
    r.x = -p.x;
    r.y = -p.y + p.x * Rational(2 * p.k);
    return r;
}

inline ExampleGroupElement example_group_commutator(const ExampleGroupElement& p,
                                                    const ExampleGroupElement& q) {
    return example_group_mul(example_group_mul(p, q),
                             example_group_mul(example_group_inverse(p), example_group_inverse(q)));
}

}  // namespace nilprog
