#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nilprog/binomial.hpp"
#include "nilprog/errors.hpp"
#include "nilprog/param_poly.hpp"

namespace nilprog {

// Exact lift of one torus coordinate: a polynomial in the iterate index n of
// degree <= 2 whose coefficients are polynomials in the formal parameters.
// Values on the torus are the lift mod 1 at integer n; two words are equal as
// torus coordinates when their parameter parts agree exactly and the purely
// rational discrepancy is an integer-valued polynomial.
class TorusWord {
public:
    TorusWord() : c_{ParamPoly(), ParamPoly(), ParamPoly()} {}

    static TorusWord constant(ParamPoly p) {
        TorusWord w;
        w.c_[0] = std::move(p);
        return w;
    }
    static TorusWord constant(Rational q) { return constant(ParamPoly::constant(std::move(q))); }
    static TorusWord in_n(int degree, ParamPoly coeff) {
        if (degree < 0 || degree > 2) throw std::invalid_argument("TorusWord: n-degree must be 0..2");
        TorusWord w;
        w.c_[static_cast<std::size_t>(degree)] = std::move(coeff);
        return w;
    }

    const ParamPoly& coeff(int degree) const { return c_[static_cast<std::size_t>(degree)]; }
    bool n_free() const { return c_[1].is_zero() && c_[2].is_zero(); }

    TorusWord& operator+=(const TorusWord& o) {
        for (int d = 0; d < 3; ++d) c_[static_cast<std::size_t>(d)] += o.c_[static_cast<std::size_t>(d)];
        return *this;
    }
    TorusWord& operator-=(const TorusWord& o) {
        for (int d = 0; d < 3; ++d) c_[static_cast<std::size_t>(d)] -= o.c_[static_cast<std::size_t>(d)];
        return *this;
    }
    friend TorusWord operator+(TorusWord a, const TorusWord& b) { return a += b; }
    friend TorusWord operator-(TorusWord a, const TorusWord& b) { return a -= b; }

    TorusWord operator-() const {
        TorusWord w = *this;
        for (auto& c : w.c_) c = -c;
        return w;
    }

    TorusWord& operator*=(const Rational& q) {
        for (auto& c : c_) c *= q;
        return *this;
    }
    friend TorusWord operator*(TorusWord a, const Rational& q) { return a *= q; }

    friend TorusWord operator*(const ParamPoly& p, const TorusWord& w) {
        TorusWord r;
        for (int d = 0; d < 3; ++d) r.c_[static_cast<std::size_t>(d)] = p * w.coeff(d);
        return r;
    }

    // n -> k*n
    TorusWord scaled_n(long k) const {
        TorusWord w = *this;
        w.c_[1] *= Rational(k);
        w.c_[2] *= Rational(k) * Rational(k);
        return w;
    }

    // n -> n+1
    TorusWord shifted_n() const {
        TorusWord w;
        w.c_[0] = c_[0] + c_[1] + c_[2];
        w.c_[1] = c_[1] + c_[2] * Rational(2);
        w.c_[2] = c_[2];
        return w;
    }

    ParamPoly at_n(const Integer& n) const {
        Rational nn(n);
        ParamPoly out = c_[0];
        out += c_[1] * nn;
        out += c_[2] * (nn * nn);
        return out;
    }

    TorusWord subst_params(const std::array<Rational, kNumParams>& values) const {
        TorusWord w;
        for (int d = 0; d < 3; ++d)
            w.c_[static_cast<std::size_t>(d)] =
                ParamPoly::constant(c_[static_cast<std::size_t>(d)].subst(values));
        return w;
    }

    // Canonical lift: the purely rational constant term moved into [0,1).
    TorusWord reduced() const {
        TorusWord w = *this;
        Rational c = w.c_[0].constant_part();
        Rational frac = c - Rational(floor_rational(c));
        w.c_[0] -= ParamPoly::constant(c);
        w.c_[0] += ParamPoly::constant(frac);
        w.reduced_ = true;
        return w;
    }
    bool is_reduced() const { return reduced_; }

    std::string str() const {
        std::string out;
        const char* pow[] = {"", "*n", "*n^2"};
        for (int d = 0; d < 3; ++d) {
            if (c_[static_cast<std::size_t>(d)].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c_[static_cast<std::size_t>(d)].str() + ")" + pow[d];
        }
        return out.empty() ? "0" : out;
    }

    static Integer floor_rational(const Rational& q) {
        Integer quo;
        mpz_fdiv_q(quo.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
        return quo;
    }

private:
    std::array<ParamPoly, 3> c_;
    bool reduced_ = false;
};

// Equality as torus-valued functions of the integer iterate index.
inline bool torus_equal(const TorusWord& u, const TorusWord& v) {
    std::vector<Rational> rational_diff(3);
    for (int d = 0; d < 3; ++d) {
        ParamPoly diff = u.coeff(d) - v.coeff(d);
        rational_diff[static_cast<std::size_t>(d)] = diff.constant_part();
        diff -= ParamPoly::constant(rational_diff[static_cast<std::size_t>(d)]);
        if (!diff.is_zero()) return false;  // parameter parts must agree exactly
    }
    return monomials_to_binomial(rational_diff).integer_coefficients();
}

inline bool torus_equal(const std::vector<TorusWord>& u, const std::vector<TorusWord>& v) {
    if (u.size() != v.size()) return false;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!torus_equal(u[i], v[i])) return false;
    return true;
}

using TorusPoint = std::vector<TorusWord>;

// A torus transformation given by an affine-polynomial update on lifts,
// optionally with a registered closed form for the n-th iterate and a
// double-precision stepper for sampling runs.
struct TorusSystem {
    std::string name;
    int dim = 0;
    std::function<TorusPoint(const TorusPoint&)> step;
    std::function<TorusPoint(const TorusPoint&)> step_back;
    std::function<TorusPoint(const TorusPoint&)> closed;  // symbolic n-th iterate
    std::function<void(std::vector<double>&, const std::array<double, kNumParams>&)> step_double;
};

struct TorusMap {
    std::string name;
    int source_dim = 0;
    int target_dim = 0;
    std::function<TorusPoint(const TorusPoint&)> apply;
    // expressions that must vanish on the map's single-valuedness domain
    std::function<TorusPoint(const TorusPoint&)> domain_residual;
};

namespace torus_systems {

// T_Z : x -> x + alpha
inline TorusSystem rotation() {
    TorusSystem s;
    s.name = "T_Z";
    s.dim = 1;
    s.step = [](const TorusPoint& p) { return TorusPoint{p[0] + TorusWord::constant(alpha())}; };
    s.step_back = [](const TorusPoint& p) { return TorusPoint{p[0] - TorusWord::constant(alpha())}; };
    s.closed = [](const TorusPoint& p) { return TorusPoint{p[0] + TorusWord::in_n(1, alpha())}; };
    s.step_double = [](std::vector<double>& x, const std::array<double, kNumParams>& v) {
        x[0] = std::fmod(x[0] + v[0] + 1.0, 1.0);
    };
    return s;
}

// S_shift : (x,y) -> (x + alpha, y + 2x + alpha + shift); shift = 0 gives the
// Example 4.1 skew product T. Closed form (x + n alpha, y + 2nx + n^2 alpha + n shift).
inline TorusSystem skew(const ParamPoly& shift, const std::string& name) {
    TorusSystem s;
    s.name = name;
    s.dim = 2;
    ParamPoly sh = shift;
    s.step = [sh](const TorusPoint& p) {
        return TorusPoint{p[0] + TorusWord::constant(alpha()),
                          p[1] + ParamPoly::constant(2) * p[0] + TorusWord::constant(alpha()) +
                              TorusWord::constant(sh)};
    };
    s.step_back = [sh](const TorusPoint& p) {
        TorusWord x_prev = p[0] - TorusWord::constant(alpha());
        return TorusPoint{x_prev, p[1] - (ParamPoly::constant(2) * x_prev) -
                                      TorusWord::constant(alpha()) - TorusWord::constant(sh)};
    };
    s.closed = [sh](const TorusPoint& p) {
        TorusWord x = p[0] + TorusWord::in_n(1, alpha());
        TorusWord y = p[1] + TorusWord::in_n(1, sh) + TorusWord::in_n(2, alpha());
        y += TorusWord::in_n(1, ParamPoly::constant(2) * p[0].coeff(0));  // + 2 n x0
        return TorusPoint{x, y};
    };
    s.step_double = [sh](std::vector<double>& x, const std::array<double, kNumParams>& v) {
        double shv = sh.subst(v);
        double nx = std::fmod(x[0] + v[0] + 1.0, 1.0);
        x[1] = std::fmod(x[1] + 2.0 * x[0] + v[0] + shv + 2.0, 1.0);
        x[0] = nx;
    };
    return s;
}

inline TorusSystem example41_T() { return skew(ParamPoly(), "T"); }
inline TorusSystem s_beta() { return skew(beta(), "S_beta"); }
inline TorusSystem s_2a() { return skew(param_a() * Rational(2), "S_2a"); }

// U_shift : (x,y,z) -> (x + alpha, y + 2x + alpha + shift, z + shift)
inline TorusSystem u_system(const ParamPoly& shift, const std::string& name) {
    TorusSystem s;
    s.name = name;
    s.dim = 3;
    ParamPoly sh = shift;
    TorusSystem base = skew(sh, name);
    s.step = [sh, base](const TorusPoint& p) {
        auto xy = base.step({p[0], p[1]});
        return TorusPoint{xy[0], xy[1], p[2] + TorusWord::constant(sh)};
    };
    s.step_back = [sh, base](const TorusPoint& p) {
        auto xy = base.step_back({p[0], p[1]});
        return TorusPoint{xy[0], xy[1], p[2] - TorusWord::constant(sh)};
    };
    s.closed = [sh, base](const TorusPoint& p) {
        auto xy = base.closed({p[0], p[1]});
        return TorusPoint{xy[0], xy[1], p[2] + TorusWord::in_n(1, sh)};
    };
    s.step_double = [sh, base](std::vector<double>& x, const std::array<double, kNumParams>& v) {
        std::vector<double> xy{x[0], x[1]};
        base.step_double(xy, v);
        x[0] = xy[0];
        x[1] = xy[1];
        x[2] = std::fmod(x[2] + sh.subst(v) + 2.0, 1.0);
    };
    return s;
}

inline TorusSystem u_beta() { return u_system(beta(), "U_beta"); }

// R_c : (x,y) -> (x + alpha, y + c)
inline TorusSystem r_system(const ParamPoly& c, const std::string& name) {
    TorusSystem s;
    s.name = name;
    s.dim = 2;
    ParamPoly cc = c;
    s.step = [cc](const TorusPoint& p) {
        return TorusPoint{p[0] + TorusWord::constant(alpha()), p[1] + TorusWord::constant(cc)};
    };
    s.step_back = [cc](const TorusPoint& p) {
        return TorusPoint{p[0] - TorusWord::constant(alpha()), p[1] - TorusWord::constant(cc)};
    };
    s.closed = [cc](const TorusPoint& p) {
        return TorusPoint{p[0] + TorusWord::in_n(1, alpha()), p[1] + TorusWord::in_n(1, cc)};
    };
    s.step_double = [cc](std::vector<double>& x, const std::array<double, kNumParams>& v) {
        x[0] = std::fmod(x[0] + v[0] + 1.0, 1.0);
        x[1] = std::fmod(x[1] + cc.subst(v) + 1.0, 1.0);
    };
    return s;
}

inline TorusSystem r_beta() { return r_system(beta(), "R_beta"); }
inline TorusSystem r_2a() { return r_system(param_a() * Rational(2), "R_2a"); }

// Heisenberg nilsystem on coordinates (g12, g23, g13) of the unitriangular
// lift, translation by t with t12 = alpha, t23 = beta, t13 rational.
inline TorusSystem heisenberg(const Rational& t13 = 0) {
    TorusSystem s;
    s.name = "heisenberg";
    s.dim = 3;
    Rational c13 = t13;
    s.step = [c13](const TorusPoint& p) {
        return TorusPoint{p[0] + TorusWord::constant(alpha()), p[1] + TorusWord::constant(beta()),
                          p[2] + TorusWord::constant(c13) + alpha() * p[1]};
    };
    s.step_back = [c13](const TorusPoint& p) {
        TorusWord y_prev = p[1] - TorusWord::constant(beta());
        return TorusPoint{p[0] - TorusWord::constant(alpha()), y_prev,
                          p[2] - TorusWord::constant(c13) - alpha() * y_prev};
    };
    s.closed = [c13](const TorusPoint& p) {
        // z_n = z + n t13 + n alpha y0 + C(n,2) alpha beta
        TorusWord z = p[2] + TorusWord::in_n(1, ParamPoly::constant(c13)) +
                      TorusWord::in_n(1, alpha() * p[1].coeff(0));
        ParamPoly ab = alpha() * beta();
        z += TorusWord::in_n(2, ab * Rational(1, 2));
        z -= TorusWord::in_n(1, ab * Rational(1, 2));
        return TorusPoint{p[0] + TorusWord::in_n(1, alpha()), p[1] + TorusWord::in_n(1, beta()), z};
    };
    s.step_double = [c13](std::vector<double>& x, const std::array<double, kNumParams>& v) {
        double z = x[2] + c13.get_d() + v[0] * x[1];
        x[0] = std::fmod(x[0] + v[0] + 1.0, 1.0);
        x[1] = std::fmod(x[1] + v[3] + 1.0, 1.0);
        x[2] = z - std::floor(z);
    };
    return s;
}

// rotation factor of the Heisenberg system: translation by (alpha, beta) on T^2
inline TorusSystem heisenberg_factor() {
    TorusSystem s;
    s.name = "heisenberg_factor";
    s.dim = 2;
    s.step = [](const TorusPoint& p) {
        return TorusPoint{p[0] + TorusWord::constant(alpha()), p[1] + TorusWord::constant(beta())};
    };
    s.step_back = [](const TorusPoint& p) {
        return TorusPoint{p[0] - TorusWord::constant(alpha()), p[1] - TorusWord::constant(beta())};
    };
    s.closed = [](const TorusPoint& p) {
        return TorusPoint{p[0] + TorusWord::in_n(1, alpha()), p[1] + TorusWord::in_n(1, beta())};
    };
    s.step_double = [](std::vector<double>& x, const std::array<double, kNumParams>& v) {
        x[0] = std::fmod(x[0] + v[0] + 1.0, 1.0);
        x[1] = std::fmod(x[1] + v[3] + 1.0, 1.0);
    };
    return s;
}

inline TorusSystem product(const TorusSystem& a, const TorusSystem& b) {
    TorusSystem s;
    s.name = a.name + "x" + b.name;
    s.dim = a.dim + b.dim;
    auto split = [da = a.dim](const TorusPoint& p) {
        return std::pair<TorusPoint, TorusPoint>(TorusPoint(p.begin(), p.begin() + da),
                                                 TorusPoint(p.begin() + da, p.end()));
    };
    auto join = [](TorusPoint x, const TorusPoint& y) {
        x.insert(x.end(), y.begin(), y.end());
        return x;
    };
    s.step = [a, b, split, join](const TorusPoint& p) {
        auto [pa, pb] = split(p);
        return join(a.step(pa), b.step(pb));
    };
    if (a.step_back && b.step_back)
        s.step_back = [a, b, split, join](const TorusPoint& p) {
            auto [pa, pb] = split(p);
            return join(a.step_back(pa), b.step_back(pb));
        };
    if (a.closed && b.closed)
        s.closed = [a, b, split, join](const TorusPoint& p) {
            auto [pa, pb] = split(p);
            return join(a.closed(pa), b.closed(pb));
        };
    if (a.step_double && b.step_double)
        s.step_double = [a, b](std::vector<double>& x, const std::array<double, kNumParams>& v) {
            std::vector<double> xa(x.begin(), x.begin() + a.dim);
            std::vector<double> xb(x.begin() + a.dim, x.end());
            a.step_double(xa, v);
            b.step_double(xb, v);
            std::copy(xa.begin(), xa.end(), x.begin());
            std::copy(xb.begin(), xb.end(), x.begin() + a.dim);
        };
    return s;
}

inline TorusSystem iterate_power(const TorusSystem& a, long k) {
    if (k < 1) throw std::invalid_argument("iterate_power: k must be >= 1");
    TorusSystem s;
    s.name = a.name + "^" + std::to_string(k);
    s.dim = a.dim;
    s.step = [a, k](const TorusPoint& p) {
        TorusPoint q = p;
        for (long i = 0; i < k; ++i) q = a.step(q);
        return q;
    };
    if (a.step_back)
        s.step_back = [a, k](const TorusPoint& p) {
            TorusPoint q = p;
            for (long i = 0; i < k; ++i) q = a.step_back(q);
            return q;
        };
    if (a.closed)
        s.closed = [a, k](const TorusPoint& p) {
            TorusPoint q = a.closed(p);
            for (auto& w : q) w = w.scaled_n(k);
            return q;
        };
    if (a.step_double)
        s.step_double = [a, k](std::vector<double>& x, const std::array<double, kNumParams>& v) {
            for (long i = 0; i < k; ++i) a.step_double(x, v);
        };
    return s;
}

}  // namespace torus_systems

namespace torus_maps {

inline TorusMap identity(int dim) {
    TorusMap m;
    m.name = "id";
    m.source_dim = m.target_dim = dim;
    m.apply = [](const TorusPoint& p) { return p; };
    return m;
}

// (x,y,z,w) -> (x, y, (4y - w)/2). The halving acts on the supplied lift, so
// on raw torus points it picks one of the two branches; along orbit lifts it
// tracks the dynamics, and single-valuedness needs the z = 2x constraint,
// recorded as the domain residual.
inline TorusMap h_map() {
    TorusMap m;
    m.name = "h";
    m.source_dim = 4;
    m.target_dim = 3;
    m.apply = [](const TorusPoint& p) {
        TorusWord last = (p[1] * Rational(4) - p[3]) * Rational(1, 2);
        return TorusPoint{p[0], p[1], last};
    };
    m.domain_residual = [](const TorusPoint& p) {
        return TorusPoint{p[2] - p[0] * Rational(2)};
    };
    return m;
}

// explicit inverse of h on the constraint set: (x,y,z) -> (x, y, 2x, 4y - 2z)
inline TorusMap h_inverse() {
    TorusMap m;
    m.name = "h_inv";
    m.source_dim = 3;
    m.target_dim = 4;
    m.apply = [](const TorusPoint& p) {
        return TorusPoint{p[0], p[1], p[0] * Rational(2), p[1] * Rational(4) - p[2] * Rational(2)};
    };
    return m;
}

// (x,y,z,w) -> (x-a, y-b, z-a, w-b)
inline TorusMap g_map() {
    TorusMap m;
    m.name = "g";
    m.source_dim = m.target_dim = 4;
    m.apply = [](const TorusPoint& p) {
        return TorusPoint{p[0] - TorusWord::constant(param_a()), p[1] - TorusWord::constant(param_b()),
                          p[2] - TorusWord::constant(param_a()), p[3] - TorusWord::constant(param_b())};
    };
    return m;
}

// first-coordinate projection T^2 -> T
inline TorusMap pi_map() {
    TorusMap m;
    m.name = "pi";
    m.source_dim = 2;
    m.target_dim = 1;
    m.apply = [](const TorusPoint& p) { return TorusPoint{p[0]}; };
    return m;
}

// (x,y,z) -> (x,y), the Heisenberg factor projection
inline TorusMap heisenberg_pi() {
    TorusMap m;
    m.name = "heis_pi";
    m.source_dim = 3;
    m.target_dim = 2;
    m.apply = [](const TorusPoint& p) { return TorusPoint{p[0], p[1]}; };
    return m;
}

}  // namespace torus_maps

// Symbolic n-th iterate from the registered closed form.
inline TorusPoint iterate_symbolic(const TorusSystem& sys, const TorusPoint& x0) {
    if (!sys.closed) throw Error("iterate_symbolic: no closed form registered for " + sys.name);
    for (const auto& w : x0)
        if (!w.n_free()) throw std::invalid_argument("iterate_symbolic: starting point depends on n");
    return sys.closed(x0);
}

// Full symbolic validation of a registered closed form: the base case at
// n = 0 plus the inductive step step(orbit(n)) = orbit(n+1) as polynomial
// identities in n and the parameters.
inline bool verify_closed_form(const TorusSystem& sys, const TorusPoint& x0) {
    auto orbit = iterate_symbolic(sys, x0);
    TorusPoint at0;
    for (const auto& w : orbit) at0.push_back(TorusWord::constant(w.at_n(Integer(0))));
    if (!torus_equal(at0, x0)) return false;
    auto stepped = sys.step(orbit);
    TorusPoint shifted;
    for (const auto& w : orbit) shifted.push_back(w.shifted_n());
    return torus_equal(stepped, shifted);
}

// Integer iterate; when both routes exist they are compared and a mismatch is
// an internal-consistency failure.
inline TorusPoint iterate_closed_form(const TorusSystem& sys, const TorusPoint& x0, long n,
                                      long stepwise_cap = 64) {
    std::vector<TorusWord> from_closed;
    bool have_closed = static_cast<bool>(sys.closed);
    if (have_closed) {
        auto symbolic = iterate_symbolic(sys, x0);
        for (const auto& w : symbolic)
            from_closed.push_back(TorusWord::constant(w.at_n(Integer(n))));
    }
    bool can_step = (n >= 0 && sys.step) || (n < 0 && sys.step_back);
    if (can_step && std::abs(n) <= stepwise_cap) {
        TorusPoint p = x0;
        for (long i = 0; i < std::abs(n); ++i) p = (n >= 0 ? sys.step(p) : sys.step_back(p));
        if (have_closed) {
            if (!torus_equal(p, from_closed))
                throw ClosedFormMismatch("iterate_closed_form: stepwise and closed form disagree for " +
                                         sys.name + " at n = " + std::to_string(n));
            return from_closed;
        }
        return p;
    }
    if (!have_closed) throw Error("iterate_closed_form: no route to iterate " + sys.name);
    return from_closed;
}

struct IntertwineResult {
    bool ok = true;
    std::string witness;  // first failure, empty when ok
};

// Symbolic check h(A^n x0) = B^n(h(x0)) as an identity of lifts in n and the
// formal parameters.
inline IntertwineResult check_intertwining(const TorusMap& map, const TorusSystem& sys_a,
                                           const TorusSystem& sys_b, const TorusPoint& x0) {
    auto orbit = iterate_symbolic(sys_a, x0);
    if (map.domain_residual) {
        for (const auto& res : map.domain_residual(orbit))
            if (!torus_equal(res, TorusWord()))
                throw DomainViolation("check_intertwining: orbit leaves the domain of " + map.name +
                                      " (residual " + res.str() + ")");
    }
    auto lhs = map.apply(orbit);
    auto rhs = iterate_symbolic(sys_b, map.apply(x0));
    IntertwineResult r;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (!torus_equal(lhs[i], rhs[i])) {
            r.ok = false;
            r.witness = "coordinate " + std::to_string(i + 1) + ": " + lhs[i].str() +
                        " != " + rhs[i].str();
            return r;
        }
    }
    return r;
}

// Numeric check over n in [-n_max, n_max] with exact rationals substituted for
// the parameters; the orbit is recomputed stepwise, so this is an independent
// route from the closed forms used by the symbolic mode.
inline IntertwineResult check_intertwining_numeric(const TorusMap& map, const TorusSystem& sys_a,
                                                   const TorusSystem& sys_b, const TorusPoint& x0,
                                                   const std::array<Rational, kNumParams>& params,
                                                   long n_max) {
    auto subst_point = [&](const TorusPoint& p) {
        TorusPoint out;
        for (const auto& w : p) out.push_back(w.subst_params(params));
        return out;
    };
    TorusPoint start = subst_point(x0);
    auto run = [&](const TorusSystem& sys, const TorusPoint& from, bool backward) {
        if (backward && !sys.step_back) throw Error("check_intertwining_numeric: no inverse step");
        std::vector<TorusPoint> orbit{from};
        TorusPoint p = from;
        for (long i = 0; i < n_max; ++i) {
            // substitute after every step: the update rules reintroduce the
            // formal parameters
            p = subst_point(backward ? sys.step_back(p) : sys.step(p));
            orbit.push_back(p);
        }
        return orbit;
    };
    IntertwineResult r;
    TorusPoint start_b = subst_point(map.apply(start));
    for (bool backward : {false, true}) {
        auto orbit_a = run(sys_a, start, backward);
        auto orbit_b = run(sys_b, start_b, backward);
        for (long i = 0; i <= n_max; ++i) {
            const auto& pa = orbit_a[static_cast<std::size_t>(i)];
            if (map.domain_residual) {
                for (const auto& res : subst_point(map.domain_residual(pa)))
                    if (!torus_equal(res, TorusWord()))
                        throw DomainViolation("check_intertwining_numeric: off-domain at n = " +
                                              std::to_string(backward ? -i : i));
            }
            auto lhs = subst_point(map.apply(pa));
            const auto& rhs = orbit_b[static_cast<std::size_t>(i)];
            if (!torus_equal(lhs, rhs)) {
                r.ok = false;
                r.witness = "n = " + std::to_string(backward ? -i : i);
                return r;
            }
        }
    }
    return r;
}

// Maximal factors of the registered algebraic models.
inline std::pair<TorusSystem, TorusMap> factor_project(const TorusSystem& sys, int d) {
    if (d < 1) throw std::invalid_argument("factor_project: d must be >= 1");
    if (sys.name == "T") {
        if (d == 1) return {torus_systems::rotation(), torus_maps::pi_map()};
        return {sys, torus_maps::identity(sys.dim)};  // full class: identity factor
    }
    if (sys.name == "heisenberg") {
        if (d == 1) return {torus_systems::heisenberg_factor(), torus_maps::heisenberg_pi()};
        return {sys, torus_maps::identity(sys.dim)};
    }
    throw Error("factor_project: unsupported system " + sys.name);
}

enum class Progression { Tau, Sigma };

// (tau_l)^n or (sigma_l)^n applied to the diagonal point (x,...,x), as the
// concatenated tuple of the component iterates. Symbolic in n.
inline TorusPoint progression_orbit_symbolic(const TorusSystem& sys, const TorusPoint& x, int l,
                                             Progression kind) {
    if (l < 1) throw std::invalid_argument("progression_orbit: l must be >= 1");
    TorusPoint out;
    for (int k = 1; k <= l; ++k) {
        auto component = (kind == Progression::Tau)
                             ? iterate_symbolic(torus_systems::iterate_power(sys, k), x)
                             : iterate_symbolic(sys, x);
        out.insert(out.end(), component.begin(), component.end());
    }
    return out;
}

inline TorusPoint progression_orbit(const TorusSystem& sys, const TorusPoint& x, int l, long n,
                                    Progression kind) {
    auto symbolic = progression_orbit_symbolic(sys, x, l, kind);
    TorusPoint out;
    for (const auto& w : symbolic) out.push_back(TorusWord::constant(w.at_n(Integer(n))));
    return out;
}

}  // namespace nilprog
