#include "nilprog/torus.hpp"

#include <gtest/gtest.h>

#include "nilprog/example_group.hpp"
#include "nilprog/occupancy.hpp"

using namespace nilprog;
using namespace nilprog::torus_systems;
using namespace nilprog::torus_maps;

namespace {

TorusPoint zeros(int dim) { return TorusPoint(static_cast<std::size_t>(dim), TorusWord()); }

TorusWord n_times(ParamPoly p) { return TorusWord::in_n(1, std::move(p)); }
TorusWord n2_times(ParamPoly p) { return TorusWord::in_n(2, std::move(p)); }

}  // namespace

TEST(TorusWord, EqualityModIntegerValuedPolynomials) {
    // (n^2 + n)/2 is integer-valued, so it vanishes on the torus
    TorusWord u = TorusWord::in_n(2, ParamPoly::constant(Rational(1, 2))) +
                  TorusWord::in_n(1, ParamPoly::constant(Rational(1, 2)));
    EXPECT_TRUE(torus_equal(u, TorusWord()));
    // n^2/2 alone is not
    EXPECT_FALSE(torus_equal(TorusWord::in_n(2, ParamPoly::constant(Rational(1, 2))), TorusWord()));
    // parameter coefficients are compared exactly, untouched by mod 1
    EXPECT_FALSE(torus_equal(TorusWord::constant(alpha()), TorusWord()));
    EXPECT_TRUE(torus_equal(TorusWord::constant(Rational(7)), TorusWord()));
    EXPECT_TRUE(torus_equal(TorusWord::constant(Rational(-3, 2)),
                            TorusWord::constant(Rational(1, 2))));
}

TEST(TorusWord, ReducedNormalizesConstant) {
    TorusWord w = TorusWord::constant(Rational(7, 3)) + TorusWord::constant(alpha());
    auto r = w.reduced();
    EXPECT_TRUE(r.is_reduced());
    EXPECT_EQ(r.coeff(0).constant_part(), Rational(1, 3));
    EXPECT_TRUE(torus_equal(w, r));
}

TEST(TorusWord, SubstitutionReproducesNumericOrbit) {
    auto sys = example41_T();
    std::array<Rational, kNumParams> params{Rational(2, 7), Rational(0), Rational(0), Rational(0)};
    auto symbolic = iterate_symbolic(sys, zeros(2));
    TorusPoint p = zeros(2);
    auto subst = [&](const TorusPoint& pt) {
        TorusPoint out;
        for (const auto& w : pt) out.push_back(w.subst_params(params));
        return out;
    };
    for (long n = 0; n <= 12; ++n) {
        TorusPoint closed;
        for (const auto& w : symbolic) closed.push_back(TorusWord::constant(w.at_n(Integer(n))));
        EXPECT_TRUE(torus_equal(subst(closed), subst(zeros(2))) || n > 0);
        EXPECT_TRUE(torus_equal(subst(closed), p));
        p = subst(sys.step(p));
    }
}

TEST(ExampleGroup, MulAndIdentity) {
    ExampleGroupElement e;
    ExampleGroupElement p{2, TorusWord::constant(alpha()), TorusWord::constant(Rational(1, 3))};
    EXPECT_EQ(example_group_mul(e, p), p);
    EXPECT_EQ(example_group_mul(p, e), p);
    EXPECT_EQ(example_group_mul(p, example_group_inverse(p)), e);
}

TEST(ExampleGroup, CommutatorLandsInCenter) {
    // [(1,0,0), (0,x',0)] = (0, 0, 2x')
    ExampleGroupElement p{1, TorusWord(), TorusWord()};
    ExampleGroupElement q{0, TorusWord::constant(alpha()), TorusWord()};
    auto c = example_group_commutator(p, q);
    EXPECT_EQ(c.k, 0);
    EXPECT_TRUE(torus_equal(c.x, TorusWord()));
    EXPECT_TRUE(torus_equal(c.y, TorusWord::constant(alpha() * Rational(2))));
}

TEST(ExampleGroup, AssociativityOnRationalTriples) {
    auto mk = [](long k, Rational x, Rational y) {
        return ExampleGroupElement{k, TorusWord::constant(std::move(x)),
                                   TorusWord::constant(std::move(y))};
    };
    std::vector<ExampleGroupElement> samples = {
        mk(1, Rational(1, 2), Rational(1, 3)), mk(-2, Rational(2, 5), Rational(3, 7)),
        mk(3, Rational(5, 6), Rational(1, 8)), mk(0, Rational(1, 4), Rational(0))};
    for (const auto& a : samples)
        for (const auto& b : samples)
            for (const auto& c : samples)
                EXPECT_EQ(example_group_mul(example_group_mul(a, b), c),
                          example_group_mul(a, example_group_mul(b, c)));
}

TEST(ExampleGroup, TranslationByTMatchesSkewProduct) {
    // t = (1, alpha, alpha) acting on cosets (0, x, y) reproduces the
    // skew product (x, y) -> (x + alpha, y + 2x + alpha)
    ExampleGroupElement t{1, TorusWord::constant(alpha()), TorusWord::constant(alpha())};
    ExampleGroupElement point{0, TorusWord::constant(Rational(1, 5)),
                              TorusWord::constant(Rational(2, 5))};
    auto moved = example_group_mul(t, point);
    // push back to a k = 0 coset representative via the lattice
    ExampleGroupElement gamma{-1, TorusWord(), TorusWord()};
    auto rep = example_group_mul(moved, gamma);
    EXPECT_EQ(rep.k, 0);
    auto expect = example41_T().step({point.x, point.y});
    EXPECT_TRUE(torus_equal(rep.x, expect[0]));
    EXPECT_TRUE(torus_equal(rep.y, expect[1]));
}

TEST(ClosedForms, PaperTupleForSBetaProduct) {
    // (S_beta x S_beta^2)^n (0,0,0,0) = (n a, n^2 a + n b, 2 n a, 4 n^2 a + 2 n b)
    auto sys = product(s_beta(), iterate_power(s_beta(), 2));
    auto orbit = iterate_symbolic(sys, zeros(4));
    ASSERT_EQ(orbit.size(), 4u);
    EXPECT_TRUE(torus_equal(orbit[0], n_times(alpha())));
    EXPECT_TRUE(torus_equal(orbit[1], n2_times(alpha()) + n_times(beta())));
    EXPECT_TRUE(torus_equal(orbit[2], n_times(alpha() * Rational(2))));
    EXPECT_TRUE(torus_equal(orbit[3], n2_times(alpha() * Rational(4)) + n_times(beta() * Rational(2))));
}

TEST(ClosedForms, AtZeroReturnsStart) {
    for (const auto& sys : {example41_T(), s_beta(), u_beta(), r_2a(), heisenberg()}) {
        TorusPoint x0;
        for (int i = 0; i < sys.dim; ++i)
            x0.push_back(TorusWord::constant(Rational(i + 1, 7)));
        auto at0 = iterate_closed_form(sys, x0, 0);
        EXPECT_TRUE(torus_equal(at0, x0)) << sys.name;
    }
}

TEST(ClosedForms, SkewProductSquaresIterate) {
    // T^n(0,0) = (n alpha, n^2 alpha)
    auto orbit = iterate_symbolic(example41_T(), zeros(2));
    EXPECT_TRUE(torus_equal(orbit[0], n_times(alpha())));
    EXPECT_TRUE(torus_equal(orbit[1], n2_times(alpha())));
}

TEST(ClosedForms, StepwiseAgreementUpTo50) {
    std::vector<TorusSystem> systems = {rotation(),
                                        example41_T(),
                                        s_beta(),
                                        s_2a(),
                                        u_beta(),
                                        r_beta(),
                                        r_2a(),
                                        heisenberg(Rational(1, 4)),
                                        heisenberg_factor(),
                                        product(s_beta(), iterate_power(s_beta(), 2)),
                                        product(example41_T(), iterate_power(example41_T(), 2))};
    for (const auto& sys : systems) {
        TorusPoint x0;
        for (int i = 0; i < sys.dim; ++i)
            x0.push_back(TorusWord::constant(Rational(i, 3)) +
                         TorusWord::constant(i % 2 ? param_b() : param_a()));
        // iterate_closed_form cross-checks stepwise vs closed internally
        for (long n : {1L, 2L, 7L, 25L, 50L}) EXPECT_NO_THROW(iterate_closed_form(sys, x0, n));
        EXPECT_NO_THROW(iterate_closed_form(sys, x0, -13));
    }
}

TEST(ClosedForms, SymbolicInductionHolds) {
    std::vector<TorusSystem> systems = {rotation(),       example41_T(),       s_beta(),
                                        s_2a(),           u_beta(),            r_beta(),
                                        r_2a(),           heisenberg(Rational(1, 4)),
                                        heisenberg_factor(),
                                        product(s_beta(), iterate_power(s_beta(), 2))};
    for (const auto& sys : systems) {
        TorusPoint x0;
        for (int i = 0; i < sys.dim; ++i)
            x0.push_back(TorusWord::constant(Rational(i, 5)) +
                         TorusWord::constant(i % 2 ? param_b() : param_a()));
        EXPECT_TRUE(verify_closed_form(sys, x0)) << sys.name;
    }
    auto broken = example41_T();
    broken.closed = [](const TorusPoint& p) {
        return TorusPoint{p[0] + TorusWord::in_n(1, alpha()), p[1] + TorusWord::in_n(1, alpha())};
    };
    EXPECT_FALSE(verify_closed_form(broken, zeros(2)));
}

TEST(ClosedForms, MismatchIsReported) {
    auto broken = example41_T();
    broken.closed = [](const TorusPoint& p) {
        // wrong closed form: drops the n^2 term
        return TorusPoint{p[0] + TorusWord::in_n(1, alpha()), p[1] + TorusWord::in_n(1, alpha())};
    };
    EXPECT_THROW(iterate_closed_form(broken, zeros(2), 3), ClosedFormMismatch);
}

TEST(Intertwining, HMapStepOne) {
    // h((S_beta x S_beta^2)^n 0) = (n a, n^2 a + n b, n b) = U_beta^n(0,0,0)
    auto sys_a = product(s_beta(), iterate_power(s_beta(), 2));
    auto res = check_intertwining(h_map(), sys_a, u_beta(), zeros(4));
    EXPECT_TRUE(res.ok) << res.witness;
    // and the image tuple is the one reported in the derivation
    auto image = h_map().apply(iterate_symbolic(sys_a, zeros(4)));
    EXPECT_TRUE(torus_equal(image[2], n_times(beta())));
}

TEST(Intertwining, GMapStepTwo) {
    // g((T x T^2)^n (a,b,a,b)) = (S_2a x S_2a^2)^n (0,0,0,0)
    auto sys_a = product(example41_T(), iterate_power(example41_T(), 2));
    auto sys_b = product(s_2a(), iterate_power(s_2a(), 2));
    TorusPoint x0 = {TorusWord::constant(param_a()), TorusWord::constant(param_b()),
                     TorusWord::constant(param_a()), TorusWord::constant(param_b())};
    auto res = check_intertwining(g_map(), sys_a, sys_b, x0);
    EXPECT_TRUE(res.ok) << res.witness;
}

TEST(Intertwining, IdentityMapSameSystem) {
    auto res = check_intertwining(identity(2), s_beta(), s_beta(), zeros(2));
    EXPECT_TRUE(res.ok);
}

TEST(Intertwining, NumericModeAgrees) {
    auto sys_a = product(s_beta(), iterate_power(s_beta(), 2));
    std::array<Rational, kNumParams> params{Rational(5, 17), Rational(3, 11), Rational(1, 9),
                                            Rational(2, 13)};
    auto res = check_intertwining_numeric(h_map(), sys_a, u_beta(), zeros(4), params, 40);
    EXPECT_TRUE(res.ok) << res.witness;

    auto sys_ta = product(example41_T(), iterate_power(example41_T(), 2));
    auto sys_tb = product(s_2a(), iterate_power(s_2a(), 2));
    TorusPoint x0 = {TorusWord::constant(param_a()), TorusWord::constant(param_b()),
                     TorusWord::constant(param_a()), TorusWord::constant(param_b())};
    EXPECT_TRUE(check_intertwining_numeric(g_map(), sys_ta, sys_tb, x0, params, 40).ok);
}

TEST(Intertwining, DomainViolationDetected) {
    // S_beta x S_beta (no square) leaves x3 = 2 x1 immediately
    auto sys_a = product(s_beta(), s_beta());
    EXPECT_THROW(check_intertwining(h_map(), sys_a, u_beta(), zeros(4)), DomainViolation);
}

TEST(Intertwining, HBijectiveOnConstraintSet) {
    // h followed by its explicit inverse is the identity on x3 = 2 x1
    auto sys_a = product(s_beta(), iterate_power(s_beta(), 2));
    auto orbit = iterate_symbolic(sys_a, zeros(4));
    auto there = h_map().apply(orbit);
    auto back = h_inverse().apply(there);
    EXPECT_TRUE(torus_equal(back, orbit));
    // also on a generic constrained point with rational entries
    TorusPoint p = {TorusWord::constant(Rational(1, 5)), TorusWord::constant(Rational(2, 7)),
                    TorusWord::constant(Rational(2, 5)), TorusWord::constant(Rational(3, 7))};
    auto image = h_map().apply(p);
    EXPECT_TRUE(torus_equal(h_inverse().apply(image), p));
}

TEST(FactorProject, Example41EquicontinuousFactor) {
    auto [factor, proj] = factor_project(example41_T(), 1);
    EXPECT_EQ(factor.name, "T_Z");
    EXPECT_EQ(proj.target_dim, 1);
    auto res = check_intertwining(proj, example41_T(), factor, zeros(2));
    EXPECT_TRUE(res.ok) << res.witness;
}

TEST(FactorProject, FullClassIsIdentityFactor) {
    auto [factor, proj] = factor_project(example41_T(), 2);
    EXPECT_EQ(factor.dim, 2);
    EXPECT_EQ(proj.name, "id");
    EXPECT_TRUE(check_intertwining(proj, example41_T(), factor, zeros(2)).ok);
}

TEST(FactorProject, HeisenbergRotationFactor) {
    auto sys = heisenberg();
    auto [factor, proj] = factor_project(sys, 1);
    EXPECT_EQ(factor.dim, 2);
    TorusPoint x0 = {TorusWord::constant(Rational(1, 3)), TorusWord::constant(Rational(1, 7)),
                     TorusWord::constant(Rational(0))};
    auto res = check_intertwining(proj, sys, factor, x0);
    EXPECT_TRUE(res.ok) << res.witness;
}

TEST(FactorProject, UnsupportedSystem) {
    EXPECT_THROW(factor_project(r_2a(), 1), Error);
}

TEST(ProgressionOrbit, LengthOneIsOrdinaryOrbit) {
    auto tau = progression_orbit_symbolic(example41_T(), zeros(2), 1, Progression::Tau);
    auto plain = iterate_symbolic(example41_T(), zeros(2));
    EXPECT_TRUE(torus_equal(tau, plain));
}

TEST(ProgressionOrbit, Example41LengthTwo) {
    // (T x T^2)^n(a,b,a,b) = (a,b,a,b) + (n a, n^2 a + 2 n a', 2 n a, 4 n^2 a + 4 n a')
    TorusPoint x = {TorusWord::constant(param_a()), TorusWord::constant(param_b())};
    auto orbit = progression_orbit_symbolic(example41_T(), x, 2, Progression::Tau);
    ASSERT_EQ(orbit.size(), 4u);
    EXPECT_TRUE(torus_equal(orbit[0], TorusWord::constant(param_a()) + n_times(alpha())));
    EXPECT_TRUE(torus_equal(orbit[1], TorusWord::constant(param_b()) + n2_times(alpha()) +
                                          n_times(param_a() * Rational(2))));
    EXPECT_TRUE(torus_equal(orbit[2], TorusWord::constant(param_a()) + n_times(alpha() * Rational(2))));
    EXPECT_TRUE(torus_equal(orbit[3], TorusWord::constant(param_b()) + n2_times(alpha() * Rational(4)) +
                                          n_times(param_a() * Rational(4))));
}

TEST(ProgressionOrbit, RotationDiagonalConstraint) {
    // samples of the l = 2 progression orbit of T_Z satisfy
    // second - x0 = 2 (first - x0)
    TorusPoint x = {TorusWord::constant(Rational(3, 8))};
    for (long n = 0; n <= 20; ++n) {
        auto pt = progression_orbit(rotation(), x, 2, n, Progression::Tau);
        auto lhs = pt[1] - x[0];
        auto rhs = (pt[0] - x[0]) * Rational(2);
        EXPECT_TRUE(torus_equal(lhs, rhs));
    }
}

TEST(ProgressionOrbit, SigmaIsDiagonalAction) {
    auto pt = progression_orbit(example41_T(), zeros(2), 3, 5, Progression::Sigma);
    ASSERT_EQ(pt.size(), 6u);
    EXPECT_TRUE(torus_equal(TorusPoint{pt[0], pt[1]}, TorusPoint{pt[2], pt[3]}));
    EXPECT_TRUE(torus_equal(TorusPoint{pt[0], pt[1]}, TorusPoint{pt[4], pt[5]}));
}

TEST(Occupancy, SingleSampleSingleCell) {
    auto rep = occupancy(r_2a(), {0.0, 0.0}, {0.4142, 0.866, 0.0, 0.0}, 1, 10);
    EXPECT_EQ(rep.occupied_cells, 1);
    EXPECT_EQ(rep.total_cells, 100);
    EXPECT_DOUBLE_EQ(rep.fraction, 0.01);
}

TEST(Occupancy, MonotoneInSampleCount) {
    std::array<double, kNumParams> params{0.41421356237309515, 0.8660254037844386, 0.0, 0.0};
    double prev = 0.0;
    for (long n : {10L, 100L, 1000L, 10000L}) {
        auto rep = occupancy(r_2a(), {0.0, 0.0}, params, n, 20);
        EXPECT_GE(rep.fraction, prev);
        prev = rep.fraction;
    }
}

TEST(Occupancy, DependentParametersStayOnLines) {
    // a = alpha: the R_2a orbit lies on the lines y = 2x + const
    std::array<double, kNumParams> params{0.41421356237309515, 0.41421356237309515, 0.0, 0.0};
    auto rep = occupancy(r_2a(), {0.0, 0.0}, params, 100000, 50);
    EXPECT_LT(rep.fraction, 0.1);
    for (const auto& row : orbit_samples(r_2a(), {0.0, 0.0}, params, 50)) {
        double residue = std::fmod(row[1] - 2.0 * row[0] + 4.0, 1.0);
        EXPECT_LT(std::min(residue, 1.0 - residue), 1e-9);
    }
}
