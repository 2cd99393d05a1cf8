#include <gtest/gtest.h>

#include <numbers>

#include "eqcheb/curves.hpp"
#include "eqcheb/errors.hpp"
#include "oracles.hpp"

using namespace eqcheb;

namespace {

CurveFamily bernoulli() { return make_lemniscate(Polynomial::from_descending({1.0, 0.0, -1.0}), 1.0); }

// larger-modulus root w of (w + 1/w)/2 = x
double joukowski_level(cplx x) {
    const cplx s = std::sqrt(x * x - 1.0);
    return std::max(std::abs(x + s), std::abs(x - s));
}

}  // namespace

TEST(Curves, ConstructorsValidate) {
    EXPECT_THROW(make_circle(0.0), InvalidArgument);
    EXPECT_THROW(make_circle(-1.0), InvalidArgument);
    EXPECT_THROW(make_lemniscate(Polynomial({1.0, 2.0, 3.0}), 1.0), InvalidArgument);  // not monic
    EXPECT_THROW(make_lemniscate(Polynomial::from_descending({1.0, 0.0}), 0.0), InvalidArgument);
    EXPECT_THROW(make_inverse_polynomial_image(Polynomial({cplx(0, 1), 1.0})), InvalidArgument);
    EXPECT_THROW(make_explicit_map(std::nullopt, std::nullopt), InvalidArgument);
}

TEST(Curves, AlternationCertificate) {
    const auto P = Polynomial::from_descending({1.0, 0.0, -3.0});
    const auto ok = make_inverse_polynomial_image(P, {-2.0, -std::sqrt(2.0), 2.0});
    EXPECT_TRUE(std::get<InversePolynomialImage>(ok).period_verified);
    EXPECT_THROW(make_inverse_polynomial_image(P, {-2.0, 0.0, 2.0}), InvalidArgument);
    EXPECT_THROW(make_inverse_polynomial_image(P, {2.0, -std::sqrt(2.0), -2.0}), InvalidArgument);
    EXPECT_FALSE(std::get<InversePolynomialImage>(make_inverse_polynomial_image(P)).period_verified);
}

TEST(Curves, CapacityConstants) {
    EXPECT_DOUBLE_EQ(capacity_leading_coefficient(make_circle(4.0)), 0.25);
    EXPECT_DOUBLE_EQ(capacity_leading_coefficient(make_interval()), 2.0);
    // cap{|P| <= R} = R^(1/m)
    EXPECT_NEAR(capacity_leading_coefficient(make_lemniscate(Polynomial::from_descending({1.0, 0.0, 0.0, -1.0}), 8.0)),
                0.5, 1e-15);
    // cap P^-1([-1,1]) = (1/2)^(1/m) for monic P
    EXPECT_NEAR(capacity_leading_coefficient(make_inverse_polynomial_image(Polynomial::from_descending({1.0, 0.0, -3.0}))),
                std::sqrt(2.0), 1e-15);
}

TEST(Curves, CircleSampleIsEquispaced) {
    const auto s = sample_level_curve(make_circle(2.0), 1.5, 64);
    ASSERT_EQ(s.points.size(), 64u);
    for (size_t j = 0; j < s.points.size(); ++j) {
        EXPECT_NEAR(std::abs(s.points[j]), 3.0, 1e-14);
        EXPECT_NEAR(std::abs(s.points[j] - std::polar(3.0, s.theta[j])), 0.0, 1e-14);
    }
    EXPECT_FALSE(s.non_jordan);
}

TEST(Curves, IntervalSampleLiesOnEllipse) {
    const double r = 2.0;
    const auto s = sample_level_curve(make_interval(), r, 100);
    const double a = 0.5 * (r + 1 / r), b = 0.5 * (r - 1 / r);
    for (size_t j = 0; j < s.points.size(); ++j) {
        const cplx z = s.points[j];
        EXPECT_NEAR(std::pow(z.real() / a, 2) + std::pow(z.imag() / b, 2), 1.0, 1e-13);
        EXPECT_NEAR(std::abs(z - oracle::ellipse_point(r, s.theta[j])), 0.0, 1e-14);
    }
}

TEST(Curves, LemniscateSampleSatisfiesLevelEquation) {
    for (double r : {1.05, 1.5, 4.0}) {
        const auto s = sample_level_curve(bernoulli(), r, 200);
        EXPECT_GE(s.points.size(), 200u);
        for (cplx z : s.points) EXPECT_NEAR(std::abs(z * z - 1.0), r * r, 1e-12 * r * r);
    }
}

TEST(Curves, PreimageSampleSatisfiesLevelEquation) {
    const auto f = make_inverse_polynomial_image(Polynomial::from_descending({1.0, 0.0, -3.0}));
    const double pinch = std::sqrt(3.0 + std::sqrt(8.0));
    for (double r : {1.5, 3.0}) {
        const auto s = sample_level_curve(f, r, 128);
        for (cplx z : s.points) EXPECT_NEAR(joukowski_level(z * z - 3.0), r * r, 1e-10 * r * r);
        EXPECT_EQ(s.non_jordan, r < pinch);  // two components below the pinch
    }
}

TEST(Curves, SamplingRejectsInnerLevels) {
    EXPECT_THROW(sample_level_curve(make_circle(1.0), 1.0, 16), InvalidArgument);
    EXPECT_THROW(sample_level_curve(make_interval(), 0.5, 16), InvalidArgument);
    EXPECT_THROW(sample_level_curve(make_circle(1.0), 2.0, 0), InvalidArgument);
    SampleOptions inner;
    inner.allow_inner_levels = true;
    const auto s = sample_level_curve(bernoulli(), 0.8, 64, inner);
    EXPECT_TRUE(s.non_jordan);
    for (cplx z : s.points) EXPECT_NEAR(std::abs(z * z - 1.0), 0.64, 1e-12);
}

TEST(Curves, NonJordanDetection) {
    // the Bernoulli curve pinches at the origin, where |P| = 1
    EXPECT_TRUE(is_non_jordan(bernoulli(), 1.0));
    EXPECT_FALSE(is_non_jordan(bernoulli(), 1.01));
    // a two-interval preimage: the critical value P(0) = -3 has Joukowski level 3 + sqrt 8
    const auto f = make_inverse_polynomial_image(Polynomial::from_descending({1.0, 0.0, -3.0}));
    const double pinch = std::sqrt(3.0 + std::sqrt(8.0));
    EXPECT_TRUE(is_non_jordan(f, pinch * 0.999));
    EXPECT_FALSE(is_non_jordan(f, pinch * 1.001));
}

TEST(Curves, WindingNumbers) {
    std::vector<cplx> loop;
    for (int k = 0; k < 50; ++k) loop.push_back(std::polar(1.0, 2 * std::numbers::pi * k / 50));
    EXPECT_EQ(winding_number(loop, 0.0), 1);
    EXPECT_EQ(winding_number(loop, 3.0), 0);
    std::reverse(loop.begin(), loop.end());
    EXPECT_EQ(winding_number(loop, {0.2, 0.1}), -1);
}

TEST(Curves, RotationalSymmetry) {
    EXPECT_EQ(rotational_symmetry(make_circle(1.0)), 0);
    EXPECT_EQ(rotational_symmetry(make_interval()), 2);
    EXPECT_EQ(rotational_symmetry(bernoulli()), 2);
    EXPECT_EQ(rotational_symmetry(make_lemniscate(Polynomial::from_descending({1.0, 0.0, 0.0, -1.0}), 1.0)), 3);
    EXPECT_EQ(rotational_symmetry(make_lemniscate(Polynomial::from_descending({1.0, 1.0, -1.0}), 1.0)), 1);
}

TEST(Curves, PhiSeriesMapsLevelToCircle) {
    const auto phi = phi_series(bernoulli(), 60);
    const auto s = sample_level_curve(bernoulli(), 3.0, 32);
    for (cplx z : s.points) {
        const auto v = evaluate_checked(phi, z);
        ASSERT_TRUE(v.converged);
        EXPECT_NEAR(std::abs(v.value), 3.0, 1e-12);
    }
}

TEST(Curves, LevelCurvePointContinuesFromNeighbour) {
    const auto s = sample_level_curve(bernoulli(), 2.0, 64);
    const auto p = level_curve_point(bernoulli(), 2.0, s.theta[10] + 1e-3, s.points[10]);
    ASSERT_TRUE(p.has_value());
    EXPECT_NEAR(std::abs(*p * *p - 1.0), 4.0, 1e-12);
    EXPECT_LT(std::abs(*p - s.points[10]), 1e-2);
}
