#include <gtest/gtest.h>

#include <random>

#include "eqcheb/errors.hpp"
#include "eqcheb/polynomial.hpp"
#include "eqcheb/rootfind.hpp"
#include "oracles.hpp"

using namespace eqcheb;

TEST(Polynomial, DescendingInputIsReversed) {
    const auto p = Polynomial::from_descending({1.0, 0.0, -1.0});
    ASSERT_EQ(p.degree(), 2);
    EXPECT_EQ(p[0], cplx(-1.0));
    EXPECT_EQ(p[2], cplx(1.0));
    EXPECT_TRUE(p.is_monic());
}

TEST(Polynomial, ZeroPolynomialHasDegreeMinusOne) {
    EXPECT_EQ(Polynomial().degree(), -1);
    EXPECT_EQ(Polynomial({0.0, 0.0}).degree(), -1);
    EXPECT_TRUE(Polynomial({0.0}).is_zero());
}

TEST(Polynomial, EvaluationMatchesHorner) {
    std::mt19937 rng(3);
    std::normal_distribution<double> nd;
    std::vector<cplx> c(9);
    for (auto& x : c) x = {nd(rng), nd(rng)};
    const Polynomial p(c);
    for (int k = 0; k < 20; ++k) {
        const cplx z{nd(rng), nd(rng)};
        EXPECT_NEAR(std::abs(p(z) - oracle::horner(c, z)), 0.0, 1e-12 * (1 + std::abs(p(z))));
    }
}

TEST(Polynomial, DerivativeAgreesWithDifferenceQuotient) {
    const Polynomial p({1.0, cplx(0, 2), -3.0, 0.5});
    const cplx z{0.3, -0.7};
    const double h = 1e-6;
    const cplx fd = (p(z + h) - p(z - h)) / (2 * h);
    cplx v, dv;
    p.eval_with_derivative(z, v, dv);
    EXPECT_NEAR(std::abs(dv - fd), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(p.derivative()(z) - dv), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(v - p(z)), 0.0, 1e-14);
}

TEST(Polynomial, TaylorShiftComposesWithAffineMap) {
    const Polynomial p({2.0, -1.0, 0.0, 1.0, cplx(0.5, 0.25)});
    const cplx center{0.4, -0.2};
    const double scale = 2.5;
    const auto q = p.taylor_shift(center, scale);
    for (double t : {-1.0, -0.3, 0.2, 0.9}) {
        const cplx u{t, 0.5 * t};
        EXPECT_NEAR(std::abs(q(u) - p(center + scale * u)), 0.0, 1e-12);
    }
}

TEST(Polynomial, PowerMatchesRepeatedProduct) {
    const Polynomial p({-1.0, 0.0, 1.0});
    Polynomial acc({1.0});
    for (int k = 1; k <= 5; ++k) {
        acc = acc * p;
        EXPECT_EQ(coefficient_distance(pow(p, k), acc), 0.0);
        EXPECT_LT(oracle::distance(pow(p, k).coeffs(), oracle::bernoulli_power(k)), 1e-12);
    }
}

TEST(Polynomial, FromRootsThenRootfindRecoversRoots) {
    std::vector<cplx> roots{{1, 0}, {-0.5, 0.5}, {-0.5, -0.5}, {0, 2}, {3, -1}};
    const auto p = Polynomial::from_roots(roots);
    EXPECT_TRUE(p.is_monic());
    auto found = all_roots(p).roots;
    ASSERT_EQ(found.size(), roots.size());
    for (cplx r : roots) {
        double best = 1e300;
        for (cplx f : found) best = std::min(best, std::abs(f - r));
        EXPECT_LT(best, 1e-12);
    }
}

TEST(Polynomial, CoefficientDistanceCountsMissingAsZero) {
    EXPECT_DOUBLE_EQ(coefficient_distance(Polynomial({1.0}), Polynomial({1.0, 0.0, 2.0})), 2.0);
}

TEST(Polynomial, RealCoefficientCheck) {
    EXPECT_TRUE(Polynomial({1.0, -2.0}).has_real_coefficients());
    EXPECT_FALSE(Polynomial({1.0, cplx(0, 1e-3)}).has_real_coefficients(1e-6));
}
