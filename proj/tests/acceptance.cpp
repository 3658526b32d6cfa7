// Acceptance suite: one line per criterion, exit 0 only if every criterion
// holds at its stated tolerance and inside its runtime budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "nilprog/binomial.hpp"
#include "nilprog/dark.hpp"
#include "nilprog/occupancy.hpp"
#include "nilprog/sampling.hpp"
#include "nilprog/span.hpp"
#include "nilprog/suite.hpp"
#include "nilprog/torus.hpp"

using namespace nilprog;
using namespace nilprog::torus_systems;
using namespace nilprog::torus_maps;

namespace {

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<bool(std::string&)> run;
};

TorusPoint zeros(int dim) { return TorusPoint(static_cast<std::size_t>(dim), TorusWord()); }

std::vector<SpecPtr> free_specs(int max_rank, int max_class) {
    std::vector<SpecPtr> specs;
    for (int r = 1; r <= max_rank; ++r)
        for (int c = 1; c <= max_class; ++c) specs.push_back(hall_basis(r, c));
    return specs;
}

// 1. symbolic closed form of (S_beta x S_beta^2)^n at the origin
bool closed_form_tuple(std::string& detail) {
    auto sys = product(s_beta(), iterate_power(s_beta(), 2));
    auto orbit = iterate_symbolic(sys, zeros(4));
    bool ok = torus_equal(orbit[0], TorusWord::in_n(1, alpha())) &&
              torus_equal(orbit[1], TorusWord::in_n(2, alpha()) + TorusWord::in_n(1, beta())) &&
              torus_equal(orbit[2], TorusWord::in_n(1, alpha() * Rational(2))) &&
              torus_equal(orbit[3], TorusWord::in_n(2, alpha() * Rational(4)) +
                                        TorusWord::in_n(1, beta() * Rational(2)));
    detail = "(" + orbit[0].str() + ", " + orbit[1].str() + ", " + orbit[2].str() + ", " +
             orbit[3].str() + ")";
    return ok;
}

// 2. h and g intertwine symbolically and numerically on [-100, 100]
bool intertwining(std::string& detail) {
    auto sys_h_a = product(s_beta(), iterate_power(s_beta(), 2));
    auto res_h = check_intertwining(h_map(), sys_h_a, u_beta(), zeros(4));
    auto sys_g_a = product(example41_T(), iterate_power(example41_T(), 2));
    auto sys_g_b = product(s_2a(), iterate_power(s_2a(), 2));
    TorusPoint x0 = {TorusWord::constant(param_a()), TorusWord::constant(param_b()),
                     TorusWord::constant(param_a()), TorusWord::constant(param_b())};
    auto res_g = check_intertwining(g_map(), sys_g_a, sys_g_b, x0);
    if (!res_h.ok || !res_g.ok) {
        detail = "symbolic failure: " + res_h.witness + res_g.witness;
        return false;
    }
    std::vector<std::array<Rational, kNumParams>> choices = {
        {Rational(5, 17), Rational(3, 11), Rational(1, 9), Rational(2, 13)},
        {Rational(1, 3), Rational(2, 7), Rational(4, 5), Rational(5, 6)},
        {Rational(7, 19), Rational(8, 23), Rational(1, 2), Rational(3, 10)}};
    for (const auto& params : choices) {
        if (!check_intertwining_numeric(h_map(), sys_h_a, u_beta(), zeros(4), params, 100).ok) {
            detail = "numeric failure for h";
            return false;
        }
        if (!check_intertwining_numeric(g_map(), sys_g_a, sys_g_b, x0, params, 100).ok) {
            detail = "numeric failure for g";
            return false;
        }
    }
    detail = "symbolic + numeric on [-100,100], 3 parameter choices";
    return true;
}

// 3. 1000 seeded hp_mul pairs against the pointwise oracle
bool hp_closure(std::string& detail) {
    auto specs = free_specs(3, 4);
    Rng rng(20260808);
    int good = 0;
    const int total = 1000;
    for (int i = 0; i < total; ++i) {
        const auto& spec = specs[static_cast<std::size_t>(i) % specs.size()];
        int s = spec->nil_class();
        auto phi = random_hp_member(rng, spec);
        auto psi = random_hp_member(rng, spec);
        auto prod = hp_mul(phi, psi);
        bool ok = true;
        for (long n = 0; n <= 2 * s + 1 && ok; ++n)
            ok = hp_eval(prod, n) == mul(hp_eval(phi, n), hp_eval(psi, n));
        good += ok;
    }
    detail = std::to_string(good) + "/" + std::to_string(total) + " pairs exact";
    return good == total;
}

// 4. 500 seeded dark expansions, every coefficient at its filtration level
bool dark_weight(std::string& detail) {
    auto specs = free_specs(3, 4);
    Rng rng(411);
    int good = 0;
    const int total = 500;
    for (int i = 0; i < total; ++i) {
        const auto& spec = specs[static_cast<std::size_t>(i) % specs.size()];
        std::vector<std::pair<GroupElement, BinomialPoly>> factors;
        int nfac = static_cast<int>(rng.range(1, 3));
        for (int j = 0; j < nfac; ++j) {
            int deg = static_cast<int>(rng.range(1, spec->nil_class()));
            auto g = random_element_min_weight(rng, spec, deg);
            std::map<int, Rational> coeffs;
            for (int d = 1; d <= deg; ++d) coeffs[d] = Rational(rng.range(-2, 2));
            coeffs[deg] = Rational(rng.range(1, 2));
            factors.emplace_back(g, BinomialPoly(coeffs));
        }
        bool ok = true;
        try {
            auto expansion = dark_expand(factors);
            for (const auto& [idx, z] : expansion.table)
                if (!weight(z).at_least(idx[0])) ok = false;
        } catch (const Error&) {
            ok = false;
        }
        good += ok;
    }
    detail = std::to_string(good) + "/" + std::to_string(total) + " instances";
    return good == total;
}

// 5. Heisenberg: commutator subgroup of the A_1 generators = span of the A_2
// generators, both inclusions, truncations l = 1..4, both models
bool commutator_filtration(std::string& detail) {
    for (bool use_matrix : {false, true}) {
        SpecPtr spec = use_matrix ? NilGroupSpec::unitriangular(3) : hall_basis(2, 2);
        GroupElement a = use_matrix ? GroupElement::elementary(spec, 1, 2, 1)
                                    : GroupElement::generator(spec, 0);
        GroupElement b = use_matrix ? GroupElement::elementary(spec, 2, 3, 1)
                                    : GroupElement::generator(spec, 1);
        GroupElement z = use_matrix ? GroupElement::elementary(spec, 1, 3, 1)
                                    : GroupElement::generator(spec, 2);
        auto square = HPSequence::from_binomial_poly(z, monomial_to_binomial(2));
        std::vector<HPSequence> a1 = {HPSequence::power_sequence(a), HPSequence::power_sequence(b),
                                      HPSequence::power_sequence(z), square};
        std::vector<HPSequence> a2 = {square};
        std::vector<HPSequence> commutators;
        for (std::size_t i = 0; i < a1.size(); ++i)
            for (std::size_t j = 0; j < a1.size(); ++j)
                if (i != j) commutators.push_back(hp_commutator(a1[i], a1[j]));
        for (int l = 1; l <= 4; ++l) {
            if (!filtration_span_check(a2, commutators, l).ok) {
                detail = "commutators not inside the A2 span at l=" + std::to_string(l);
                return false;
            }
            if (!filtration_span_check(commutators, a2, l).ok) {
                detail = "A2 generators outside the commutator span at l=" + std::to_string(l);
                return false;
            }
        }
    }
    detail = "both inclusions, l = 1..4, free and matrix Heisenberg";
    return true;
}

// 6. commutator subgroup of the projected Hall-Petresco generators equals the
// span of the n^2 power sequences of G_2, l in {2,3}
bool theorem_generators(std::string& detail) {
    auto spec = hall_basis(2, 2);
    auto a = GroupElement::generator(spec, 0);
    auto b = GroupElement::generator(spec, 1);
    auto z = GroupElement::generator(spec, 2);
    std::vector<HPSequence> hpe = {HPSequence::power_sequence(a), HPSequence::power_sequence(b),
                                   HPSequence::power_sequence(z), HPSequence::binomial_power(z, 2)};
    std::vector<HPSequence> commutators;
    for (std::size_t i = 0; i < hpe.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) commutators.push_back(hp_commutator(hpe[i], hpe[j]));
    std::vector<HPSequence> squares = {HPSequence::from_binomial_poly(z, monomial_to_binomial(2))};
    for (int l : {2, 3}) {
        if (!filtration_span_check(squares, commutators, l).ok ||
            !filtration_span_check(commutators, squares, l).ok) {
            detail = "span mismatch at l=" + std::to_string(l);
            return false;
        }
    }
    detail = "equality both directions, l in {2,3}";
    return true;
}

// 7. multilinear commutator identity over the full [-3,3]^3 grid
bool multilinear_identity(std::string& detail) {
    auto spec = hall_basis(2, 3);
    auto x1 = GroupElement::generator(spec, 0);
    auto x2 = GroupElement::generator(spec, 1);
    auto y = GroupElement::from_lie_coords(
        spec, {Rational(1), Rational(-1), Rational(0), Rational(0), Rational(0)});
    auto base = commutator(commutator(x1, x2), y);
    long points = 0;
    for (long n1 = -3; n1 <= 3; ++n1)
        for (long n2 = -3; n2 <= 3; ++n2)
            for (long n3 = -3; n3 <= 3; ++n3) {
                auto lhs = commutator(commutator(power(x1, n1), power(x2, n2)), power(y, n3));
                if (lhs != power(base, n1 * n2 * n3)) {
                    detail = "mismatch at (" + std::to_string(n1) + "," + std::to_string(n2) + "," +
                             std::to_string(n3) + ")";
                    return false;
                }
                ++points;
            }
    detail = std::to_string(points) + " grid points exact";
    return true;
}

// 8. binomial-basis round trips for d <= 12
bool binomial_roundtrip(std::string& detail) {
    for (int d = 1; d <= 12; ++d) {
        auto p = monomial_to_binomial(d);
        if (p.coeff(0) != 0 || !p.integer_coefficients()) {
            detail = "bad coefficients at d=" + std::to_string(d);
            return false;
        }
        for (long n = 0; n <= d + 3; ++n) {
            Rational pow = 1;
            for (int i = 0; i < d; ++i) pow *= n;
            if (p.eval(n) != pow) {
                detail = "round trip failed at d=" + std::to_string(d) + " n=" + std::to_string(n);
                return false;
            }
        }
    }
    auto d3 = monomial_to_binomial(3);
    if (d3.coeff(1) != 1 || d3.coeff(2) != 6 || d3.coeff(3) != 6) {
        detail = "d=3 coefficients are not [1,6,6]";
        return false;
    }
    detail = "d <= 12, b0 = 0, integer coefficients, d=3 -> [1,6,6]";
    return true;
}

// 9. occupancy dichotomy at N = 10^6, grid 100
bool occupancy_dichotomy(std::string& detail) {
    std::array<double, kNumParams> indep{0.41421356237309515, 0.8660254037844386, 0.0, 0.0};
    std::array<double, kNumParams> dep = indep;
    dep[1] = dep[0];
    auto hi = occupancy(r_2a(), {0.0, 0.0}, indep, 1000000, 100);
    auto lo = occupancy(r_2a(), {0.0, 0.0}, dep, 1000000, 100);
    char buf[128];
    std::snprintf(buf, sizeof buf, "independent %.4f (>= 0.99), dependent %.4f (<= 0.1)",
                  hi.fraction, lo.fraction);
    detail = buf;
    return hi.fraction >= 0.99 && lo.fraction <= 0.1;
}

// 10. identical config and seed give byte-identical reports modulo timing
bool determinism(std::string& detail) {
    SuiteConfig cfg;
    cfg.suite = "all";
    cfg.seed = 7;
    auto a = run_suite(cfg).to_json();
    auto b = run_suite(cfg).to_json();
    bool ok = deterministic_view(a).dump() == deterministic_view(b).dump();
    detail = ok ? "reports byte-identical with timing stripped" : "reports differ";
    return ok;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"example41-closed-form", 1.0, closed_form_tuple},
        {"intertwining-h-and-g", 1.0, intertwining},
        {"hp-group-closure-1000", 30.0, hp_closure},
        {"dark-weight-500", 30.0, dark_weight},
        {"commutator-filtration", 10.0, commutator_filtration},
        {"theorem-generators", 10.0, theorem_generators},
        {"multilinear-identity", 5.0, multilinear_identity},
        {"binomial-roundtrip", 1.0, binomial_roundtrip},
        {"occupancy-dichotomy", 10.0, occupancy_dichotomy},
        {"report-determinism", 120.0, determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto& c = criteria[i];
        std::string detail;
        bool ok = false;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_budget = secs < c.budget_seconds;
        bool pass = ok && in_budget;
        failures += !pass;
        std::printf("%s  criterion %zu %-24s [%5.2fs/%.0fs]  %s%s\n", pass ? "PASS" : "FAIL",
                    i + 1, c.name.c_str(), secs, c.budget_seconds, detail.c_str(),
                    !ok ? "" : (in_budget ? "" : "  (budget exceeded)"));
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures),
                criteria.size());
    return failures == 0 ? 0 : 1;
}
