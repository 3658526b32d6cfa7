#include "nilprog/binomial.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace nilprog;

namespace {

// Independent oracle: solve for b_1..b_d from the values of n^d at
// n = 1..d; the system is triangular because C(n,l) = 0 for l > n.
std::vector<Rational> solve_binomial_coeffs(int d) {
    std::vector<Rational> b(static_cast<std::size_t>(d) + 1);
    for (int n = 1; n <= d; ++n) {
        Rational pow = 1;
        for (int i = 0; i < d; ++i) pow *= n;
        Rational acc = 0;
        for (int l = 1; l < n; ++l) acc += b[l] * Rational(binomial(Integer(n), l));
        b[n] = pow - acc;
    }
    return b;
}

Rational int_pow(long n, int d) {
    Rational p = 1;
    for (int i = 0; i < d; ++i) p *= n;
    return p;
}

}  // namespace

TEST(MonomialToBinomial, MatchesTriangularOracle) {
    for (int d = 1; d <= 12; ++d) {
        auto p = monomial_to_binomial(d);
        auto oracle = solve_binomial_coeffs(d);
        EXPECT_EQ(p.coeff(0), 0);
        for (int l = 1; l <= d; ++l) EXPECT_EQ(p.coeff(l), oracle[l]) << "d=" << d << " l=" << l;
        EXPECT_TRUE(p.integer_coefficients());
    }
}

TEST(MonomialToBinomial, FrozenSmallCases) {
    EXPECT_EQ(monomial_to_binomial(1).coeff(1), 1);
    auto d2 = monomial_to_binomial(2);
    EXPECT_EQ(d2.coeff(1), 1);
    EXPECT_EQ(d2.coeff(2), 2);
    auto d3 = monomial_to_binomial(3);
    EXPECT_EQ(d3.coeff(1), 1);
    EXPECT_EQ(d3.coeff(2), 6);
    EXPECT_EQ(d3.coeff(3), 6);
}

TEST(MonomialToBinomial, DegreeRange) {
    EXPECT_THROW(monomial_to_binomial(0), std::invalid_argument);
    EXPECT_THROW(monomial_to_binomial(13), std::invalid_argument);
}

TEST(MonomialToBinomial, RoundTrip) {
    for (int d = 1; d <= 12; ++d) {
        auto p = monomial_to_binomial(d);
        for (long n = 0; n <= d + 3; ++n) EXPECT_EQ(p.eval(n), int_pow(n, d));
    }
}

TEST(BinomialProductExpand, FrozenSmallCases) {
    // C(n,1)^2 = n^2
    auto p = binomial_product_expand({1, 1});
    EXPECT_EQ(p, (std::vector<Rational>{0, 0, 1}));
    // 2 C(n,2) = n^2 - n
    p = binomial_product_expand({2});
    EXPECT_EQ(p, (std::vector<Rational>{0, -1, 1}));
    // 2 C(n,1) C(n,2) = n^3 - n^2
    p = binomial_product_expand({1, 2});
    EXPECT_EQ(p, (std::vector<Rational>{0, 0, -1, 1}));
}

TEST(BinomialProductExpand, ShapeInvariants) {
    testutil::Rng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        int d = static_cast<int>(rng.range(1, 4));
        std::vector<int> idx;
        long total = 0;
        for (int i = 0; i < d; ++i) {
            int l = static_cast<int>(rng.range(1, 3));
            idx.push_back(l);
            total += l;
        }
        if (total > kBinomialDegreeCap) continue;
        auto poly = binomial_product_expand(idx);
        EXPECT_EQ(static_cast<long>(poly.size()) - 1, total);
        EXPECT_EQ(poly.back(), 1);
        EXPECT_EQ(poly[0], 0);
        for (const auto& c : poly) EXPECT_TRUE(is_integral(c));
        // cross-check against direct evaluation
        for (long n = 0; n <= total + 2; ++n) {
            Rational direct = 1;
            for (int l : idx) direct *= Rational(factorial(l)) * Rational(binomial(Integer(n), l));
            Rational horner = 0;
            for (std::size_t k = poly.size(); k-- > 0;) horner = horner * n + poly[k];
            EXPECT_EQ(horner, direct);
        }
    }
    EXPECT_THROW(binomial_product_expand({7, 7}), Error);
    EXPECT_THROW(binomial_product_expand({0}), std::invalid_argument);
}

TEST(Eval, PaperConventionBelowIndex) {
    // C(n,l) vanishes for 0 <= n < l
    auto p = BinomialPoly::basis(2);
    EXPECT_EQ(p.eval(0), 0);
    EXPECT_EQ(p.eval(1), 0);
    EXPECT_EQ(p.eval(2), 1);
}

TEST(Eval, CubeAtFour) {
    auto p = monomial_to_binomial(3);
    EXPECT_EQ(p.eval(4), 64);
}

TEST(Eval, ZeroPolynomial) {
    BinomialPoly z;
    for (long n : {0L, 1L, 7L, -2L}) EXPECT_EQ(z.eval(n), 0);
}

TEST(Eval, NegativeArguments) {
    // outside the convention's range the falling factorial applies
    auto p = BinomialPoly::basis(2);
    EXPECT_EQ(p.eval(-1), 1);  // (-1)(-2)/2
    EXPECT_EQ(p.eval(-3), 6);  // (-3)(-4)/2
}

TEST(MonomialsToBinomial, GeneralPolynomial) {
    // n^2 - n = 2 C(n,2)
    auto p = monomials_to_binomial({Rational(0), Rational(-1), Rational(1)});
    EXPECT_EQ(p.coeff(1), 0);
    EXPECT_EQ(p.coeff(2), 2);
    EXPECT_EQ(p.degree(), 2);
}

TEST(Printing, HumanReadable) {
    auto p = monomial_to_binomial(3);
    EXPECT_EQ(p.str(), "1*C(n,1) + 6*C(n,2) + 6*C(n,3)");
    EXPECT_EQ(BinomialPoly().str(), "0");
}
