#include <gtest/gtest.h>

#include <numbers>

#include "eqcheb/experiments.hpp"
#include "oracles.hpp"

using namespace eqcheb;

namespace {

CurveFamily bernoulli() { return make_lemniscate(Polynomial::from_descending({1.0, 0.0, -1.0}), 1.0); }

}  // namespace

TEST(Experiments, LogLogFitRecoversPowerLaw) {
    std::vector<double> x{1, 2, 4, 8, 16}, y;
    for (double v : x) y.push_back(3.0 * std::pow(v, -2.5));
    const auto fit = fit_loglog(x, y);
    EXPECT_NEAR(fit.slope, -2.5, 1e-12);
    EXPECT_NEAR(fit.intercept, std::log(3.0), 1e-12);
    EXPECT_EQ(fit.points, 5);
    y[2] = 0.0;  // skipped
    EXPECT_EQ(fit_loglog(x, y).points, 4);
}

TEST(Experiments, ClassicalChebyshevByRecurrence) {
    for (int n = 0; n <= 25; ++n)
        EXPECT_LT(oracle::distance(monic_classical_chebyshev(n).coeffs(), oracle::monic_chebyshev(n)), 1e-13) << n;
}

TEST(Experiments, ClosedFormsExistOnlyWhereKnown) {
    EXPECT_TRUE(chebyshev_oracle(make_circle(1.0), 3).has_value());
    EXPECT_TRUE(chebyshev_oracle(make_interval(), 3).has_value());
    EXPECT_TRUE(chebyshev_oracle(bernoulli(), 4).has_value());
    EXPECT_FALSE(chebyshev_oracle(bernoulli(), 3).has_value());
    const auto b6 = chebyshev_oracle(bernoulli(), 6);
    EXPECT_LT(oracle::distance(b6->coeffs(), oracle::bernoulli_power(3)), 1e-15);
}

TEST(Experiments, GreedyMatchPairsNearestFirst) {
    const std::vector<cplx> from{0.0, 1.0, 5.0};
    const std::vector<cplx> to{{1.1, 0}, {4.0, 0}, {0.05, 0}};
    const auto m = greedy_match(from, to);
    EXPECT_EQ(m, (std::vector<int>{2, 0, 1}));
}

TEST(Experiments, TrajectoryGridShape) {
    const auto g = default_trajectory_grid();
    ASSERT_EQ(g.size(), 100u);
    EXPECT_NEAR(g.front(), 1.05, 1e-15);
    EXPECT_EQ(g.back(), 8.0);
    const double q = g[1] / g[0];
    for (size_t i = 1; i < g.size(); ++i) EXPECT_NEAR(g[i] / g[i - 1], q, 1e-12);
}

TEST(Experiments, SustainedIncreaseDetector) {
    WidomReport rep;
    for (double v : {5.0, 4.0, 4.5, 3.0, 3.5, 3.6, 3.7}) rep.entries.push_back({0, v});
    EXPECT_TRUE(no_sustained_increase(rep, 5));
    rep.entries.push_back({0, 3.8});  // 3.0 .. 3.8: five values in increasing order
    EXPECT_FALSE(no_sustained_increase(rep, 5));
    rep.entries[5].value.reset();  // a gap breaks the run
    EXPECT_TRUE(no_sustained_increase(rep, 5));
}

TEST(Experiments, RivlinTermsOfKnownPolynomials) {
    // p = 0: both sides vanish
    const auto zero = rivlin_terms(Polynomial(), 3, 256);
    EXPECT_DOUBLE_EQ(zero.max_p, 0.0);
    EXPECT_NEAR(zero.slack, 0.0, 1e-15);
    // p = a z^(n-1) on the unit circle: |p| = |a|, max|p + z^n| = 1 + |a|
    const auto t = rivlin_terms(Polynomial::monomial(2, 0.5), 3, 4096);
    EXPECT_NEAR(t.max_p, 0.5, 1e-15);
    EXPECT_NEAR(t.max_p_plus_zn, 1.5, 1e-12);
    EXPECT_NEAR(t.slack, 3 * 0.5 - 0.5, 1e-12);
}

TEST(Experiments, RivlinCheckIsSeeded) {
    const auto a = rivlin_check(4, 30, 512, 7);
    const auto b = rivlin_check(4, 30, 512, 7);
    EXPECT_EQ(a, b);
    EXPECT_GE(a.worst_slack, -1e-9 * 4);
    EXPECT_THROW(rivlin_check(4, 30, 100, 7), InvalidArgument);
}

TEST(Experiments, RateForCircleIsExact) {
    const auto rep = rate_experiment(make_circle(1.0), 4, {2, 4, 8, 16});
    EXPECT_TRUE(rep.exact_match);
    EXPECT_FALSE(rep.fit.has_value());
    for (const auto& e : rep.entries) EXPECT_LE(e.D, 1e-12 * std::pow(e.r, 4));
}

TEST(Experiments, RateNeedsSpreadGrid) {
    EXPECT_THROW(rate_experiment(bernoulli(), 3, {2, 3, 4}), InvalidArgument);
    EXPECT_THROW(rate_experiment(bernoulli(), 3, {2, 2.5, 3, 4}), InvalidArgument);  // span < 8
}

TEST(Experiments, RateEntriesAreConsistent) {
    const auto rep = rate_experiment(bernoulli(), 3, {2, 4, 8, 16});
    ASSERT_EQ(rep.entries.size(), 4u);
    const auto faber = monic_faber(phi_series(bernoulli(), 3), 3);
    for (const auto& e : rep.entries) {
        EXPECT_TRUE(e.converged);
        // F^_n peaks between T's sample points, so measure it on a fine sample
        EXPECT_LE(e.sup_norm, sup_norm_on_curve(faber, bernoulli(), e.r, 1 << 15));
        ASSERT_EQ(e.alpha.size(), 3u);
        // odd degree on a 2-fold symmetric set: only odd Faber indices survive
        EXPECT_LT(std::abs(e.alpha[0]), 1e-3 * std::abs(e.alpha[1]));
        EXPECT_LT(std::abs(e.alpha[2]), 1e-3 * std::abs(e.alpha[1]));
    }
    const auto decay = alpha_decay(rep, 4.0);
    ASSERT_EQ(decay.size(), 3u);
    EXPECT_TRUE(decay[0].vanishing);
    EXPECT_FALSE(decay[1].vanishing);
    EXPECT_TRUE(decay[2].vanishing);
}

TEST(Experiments, InvarianceNotesApplicability) {
    const auto lem = invariance_experiment(bernoulli(), 4, 1.5, 3.0);
    EXPECT_TRUE(lem.applicable);
    ASSERT_TRUE(lem.oracle_distance.has_value());
    EXPECT_LT(*lem.oracle_distance, 1e-6);
    const auto odd = invariance_experiment(bernoulli(), 3, 1.5, 3.0);
    EXPECT_FALSE(odd.applicable);
    EXPECT_FALSE(odd.note.empty());
}

TEST(Experiments, WidomRefusesNonJordanLevels) {
    // {|x^2 - 3| <= 1} pinches at the origin until r^2 = 3 + sqrt 8
    const auto f = make_inverse_polynomial_image(Polynomial::from_descending({1.0, 0.0, -3.0}));
    EXPECT_THROW(widom_experiment(f, 2.0, 3), InvalidArgument);
    EXPECT_THROW(widom_experiment(bernoulli(), 1.0, 3), InvalidArgument);
}

TEST(Experiments, FaberErrorVanishesForCircle) {
    const auto rep = faber_error_decay(make_circle(1.0), 3, {2, 4});
    for (const auto& e : rep.entries) EXPECT_LT(e.sup, 1e-12);
}

TEST(Experiments, ShortTrajectoryTracksRoots) {
    std::vector<double> grid;
    for (int i = 0; i < 6; ++i) grid.push_back(2.0 * std::pow(2.0, i / 5.0));
    const auto set = zero_trajectories(bernoulli(), 5, grid);
    ASSERT_EQ(set.steps.size(), 6u);
    for (const auto& s : set.steps) EXPECT_TRUE(s.ok);
    ASSERT_EQ(set.polylines.size(), 5u);
    for (const auto& line : set.polylines) EXPECT_EQ(line.size(), 6u);
    EXPECT_EQ(set.faber_roots.size(), 5u);
    EXPECT_EQ(set.endpoint_distance.size(), 5u);
    EXPECT_THROW(zero_trajectories(bernoulli(), 5, {2.0, 1.5}), InvalidArgument);
}

TEST(Experiments, SpecExampleInvariances) {
    const auto iv = invariance_experiment(make_interval(), 5, 1.5, 4.0);
    EXPECT_LT(iv.coefficient_distance, 1e-6);
    ASSERT_TRUE(iv.oracle.has_value());
    EXPECT_LT(oracle::distance(iv.oracle->coeffs(), std::vector<double>{0, 5.0 / 16, 0, -5.0 / 4, 0, 1}), 1e-15);
    const auto ipi = invariance_experiment(
        make_inverse_polynomial_image(Polynomial::from_descending({1.0, 0.0, -3.0}), {-2.0, -std::sqrt(2.0), 2.0}), 4, 1.5,
        3.0);
    EXPECT_TRUE(ipi.applicable);
    EXPECT_LT(ipi.coefficient_distance, 1e-5);
    EXPECT_FALSE(ipi.oracle.has_value());
}

TEST(Experiments, WidomOnExactFamilies) {
    const auto circ = widom_experiment(make_circle(1.0), 2.0, 6);
    for (const auto& e : circ.entries) EXPECT_EQ(e.value.value_or(1.0), 0.0);
    const auto lem = widom_experiment(bernoulli(), 2.0, 6);
    for (const auto& e : lem.entries)
        if (e.n % 2 == 0) EXPECT_LT(e.value.value_or(1.0), 1e-14) << e.n;
}

TEST(Experiments, DegreeTwoTrajectoriesSitAtPlusMinusOne) {
    const auto set = zero_trajectories(bernoulli(), 2, {1.1, 1.5, 2.0, 4.0});
    for (const auto& line : set.polylines)
        for (cplx z : line) EXPECT_LT(std::min(std::abs(z - 1.0), std::abs(z + 1.0)), 1e-7);
}

TEST(Experiments, RivlinConstantPolynomial) {
    // kappa on the positive axis so that the grid point z = 1 attains |kappa| + 1
    const auto t = rivlin_terms(Polynomial({0.5}), 4, 1024);
    EXPECT_NEAR(t.max_p_plus_zn, 1.5, 1e-12);
    EXPECT_NEAR(t.slack, 4 * 0.5 - 0.5, 1e-12);
}

TEST(Experiments, FaberErrorOnEllipseDecays) {
    const auto rep = faber_error_decay(make_interval(), 4, {2, 4, 8, 16});
    ASSERT_TRUE(rep.fit.has_value());
    EXPECT_LE(rep.fit->slope, -0.9);
    // with z = (w + 1/w)/2, the monic T_4 is (w^4 + w^-4)/16 and (phi/2)^4 = w^4/16, so the
    // error is w^-4/16 with modulus r^-4/16 everywhere on the ellipse
    for (const auto& e : rep.entries) EXPECT_NEAR(e.sup, std::pow(e.r, -4) / 16, 1e-12 * std::pow(e.r, -4) / 16);
    EXPECT_NEAR(rep.fit->slope, -4.0, 1e-9);
}

TEST(Experiments, ReportsAreDeterministic) {
    EXPECT_EQ(rate_experiment(bernoulli(), 3, {2, 4, 8, 16}), rate_experiment(bernoulli(), 3, {2, 4, 8, 16}));
    EXPECT_EQ(rivlin_check(5, 20, 512, 9), rivlin_check(5, 20, 512, 9));
}
