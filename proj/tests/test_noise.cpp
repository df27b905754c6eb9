#include "lsqsubdiv/noise.hpp"

#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>

using namespace lsqsub;

namespace {

SchemeSpec pe(int n, int d = 1) { return {Family::primal_even, n, d}; }

double fig4(double x) { return std::sin(x / 10.0) + (x / 50.0) * (x / 50.0); }

} // namespace

TEST(SampleNoisy, ZeroSigmaIsExact) {
  const NodeSet g(0.0, 1.0, 50);
  const auto y = sample_noisy(fig4, g, NoiseModel{0.0, 42});
  for (int i = 0; i < g.count; ++i) EXPECT_EQ(y[static_cast<std::size_t>(i)], fig4(g.node(i)));
}

TEST(SampleNoisy, SeedDeterminesDraws) {
  const NodeSet g(0.0, 1.0, 200);
  const auto a = sample_noisy(fig4, g, NoiseModel{0.5, 7});
  const auto b = sample_noisy(fig4, g, NoiseModel{0.5, 7});
  const auto c = sample_noisy(fig4, g, NoiseModel{0.5, 8});
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(SampleNoisy, MomentsOfStandardNormal) {
  const int N = 100000;
  const auto y = sample_noisy([](double) { return 0.0; }, NodeSet(0.0, 1.0, N), NoiseModel{1.0, 2024});
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= N;
  double var = 0.0;
  for (double v : y) var += (v - mean) * (v - mean);
  var /= N - 1;
  EXPECT_LE(std::abs(mean), 4.0 / std::sqrt(static_cast<double>(N)));
  EXPECT_NEAR(var, 1.0, 0.05);
}

TEST(SampleNoisy, RejectsBadInput) {
  const NodeSet g(0.0, 1.0, 3);
  EXPECT_THROW((void)sample_noisy(fig4, g, NoiseModel{-1.0, 1}), std::invalid_argument);
  EXPECT_THROW((void)sample_noisy([](double) { return NAN; }, g, NoiseModel{0.0, 1}), std::invalid_argument);
}

TEST(TrialEngine, StreamsDiffer) {
  auto a = trial_engine(1, 0), b = trial_engine(1, 1), c = trial_engine(2, 0), d = trial_engine(1, 0);
  const auto va = a();
  EXPECT_NE(va, b());
  EXPECT_NE(va, c());
  EXPECT_EQ(va, d());
}

TEST(Psi, HatGivesQuadratic) {
  const LimitSamples p = psi(pe(1), 8);
  EXPECT_EQ(p.first_index, 0);
  EXPECT_EQ(p.last_index(), 256);
  for (long i = 0; i <= 256; ++i) {
    const double x = p.x(i);
    EXPECT_NEAR(p.at(i), x * x + (1 - x) * (1 - x), 1e-14);
  }
  EXPECT_DOUBLE_EQ(p.at(0), 1.0);
}

TEST(Psi, ThreePointMaximum) {
  const LimitSamples p = psi(pe(3), 12);
  EXPECT_NEAR(*std::max_element(p.values.begin(), p.values.end()), 0.1489, 0.002);
}

TEST(Psi, RejectsCoarseGrid) { EXPECT_THROW((void)psi(pe(2), 5), std::invalid_argument); }

TEST(Psi, ShapeInvariants) {
  for (Family f : {Family::primal_even, Family::primal_odd})
    for (int n = 1; n <= 6; ++n)
      for (int d = 1; d <= 2 * n - 1; d += 2) {
        const SchemeSpec spec{f, n, d};
        const LimitSamples p = psi(spec, 10);
        const long last = p.last_index();
        EXPECT_NEAR(p.at(0), p.at(last), 1e-10);
        for (long i = 0; i <= last; ++i) {
          ASSERT_GT(p.at(i), 0.0);
          ASSERT_LE(p.at(i), 1.0 + 1e-9);
          ASSERT_NEAR(p.at(i), p.at(last - i), 1e-10) << to_string(f) << n << d << " " << i;
        }
        if (d < 2 * n - 1) {
          EXPECT_LT(*std::max_element(p.values.begin(), p.values.end()), 1.0) << n << " " << d;
        }
      }
}

TEST(Psi, IntegralEqualsPhiNormSquared) {
  for (int n = 1; n <= 6; ++n) {
    const LimitSamples phi = basic_limit_function(pe(n), 12);
    const PsiStats st = psi_stats_from(psi_from_phi(phi));
    EXPECT_NEAR(st.integral, l2_norm_sq(phi), 2e-3) << n;
  }
}

TEST(Psi, SupBound) {
  for (int n = 2; n <= 10; ++n) {
    const LimitSamples p = psi(pe(n), 10);
    EXPECT_LE(*std::max_element(p.values.begin(), p.values.end()), (4.0 * n + 1) / (2.0 * n * n - n)) << n;
  }
}

TEST(PsiStats, ReferenceRows) {
  struct Row {
    int d, n;
    double min, max, integral;
  };
  for (const Row& r : {Row{1, 5, 0.0847, 0.0849, 0.0847}, Row{3, 3, 0.4074, 0.4156, 0.4115}}) {
    const PsiStats st = psi_stats(pe(r.n, r.d), 12);
    EXPECT_NEAR(st.min, r.min, 0.002) << r.d << "," << r.n;
    EXPECT_NEAR(st.max, r.max, 0.002) << r.d << "," << r.n;
    EXPECT_NEAR(st.integral, r.integral, 0.002) << r.d << "," << r.n;
    EXPECT_DOUBLE_EQ(st.grid_step, 0.002);
  }
  EXPECT_NEAR(psi_stats(pe(3, 5), 12).max, 1.0, 1e-12);
}

TEST(PsiStats, Invariants) {
  for (int n = 1; n <= 7; ++n)
    for (int d = 1; d <= 2 * n - 1; d += 2) {
      const PsiStats st = psi_stats(pe(n, d), 10);
      EXPECT_GT(st.min, 0.0);
      EXPECT_LE(st.min, st.max);
      EXPECT_LE(st.max, 1.0 + 1e-9);
      EXPECT_GE(st.integral, st.min);
      EXPECT_LE(st.integral, st.max);
    }
}

TEST(PsiStats, HatIntegralIsTwoThirds) {
  const PsiStats st = psi_stats(pe(1), 10);
  EXPECT_DOUBLE_EQ(st.min, 0.5);
  EXPECT_DOUBLE_EQ(st.max, 1.0);
  // psi'' = 4; trapezoid at h plus linear interpolation from the 2^-10 grid
  const double h = 0.002, g = std::ldexp(1.0, -10);
  EXPECT_NEAR(st.integral, 2.0 / 3.0, (h * h + g * g) * 4.0 / 12.0 + 1e-12);
  EXPECT_GT(st.integral, 2.0 / 3.0);
}

TEST(PsiStats, RejectsBadArguments) {
  EXPECT_THROW((void)psi_stats(pe(2), 8), std::invalid_argument);
  EXPECT_THROW((void)psi_stats(pe(2), 10, 0.3), std::invalid_argument);
  EXPECT_THROW((void)psi_stats(pe(2), 10, 0.0), std::invalid_argument);
}

TEST(ExpectedSqError, LinearHasNoBias) {
  for (int n = 1; n <= 6; ++n) {
    const ErrorDecomposition e = expected_sq_error(pe(n), [](double x) { return 2.0 - 0.7 * x; }, 0.3, 12.375, 10);
    EXPECT_LE(e.bias_sq_term, 1e-16) << n;
  }
}

TEST(ExpectedSqError, DecompositionAddsUp) {
  const LimitSamples phi = basic_limit_function(pe(3), 10);
  const LimitSamples p = psi_from_phi(phi);
  for (double x : {50.0, 50.25, 50.5, 51.0 - 1.0 / 1024}) {
    const ErrorDecomposition e = expected_sq_error(phi, fig4, 0.5, x);
    EXPECT_EQ(e.total, e.variance_term + e.bias_sq_term);
    EXPECT_GE(e.bias_sq_term, 0.0);
    EXPECT_NEAR(e.variance_term, 0.25 * interpolate(p, x - std::floor(x)), 1e-14) << x;
    const ErrorDecomposition z = expected_sq_error(phi, fig4, 0.0, x);
    EXPECT_EQ(z.total, z.bias_sq_term);
    EXPECT_EQ(z.bias_sq_term, e.bias_sq_term);
  }
}

TEST(ExpectedSqError, BiasMatchesDirectTranslateSum) {
  const LimitSamples phi = basic_limit_function(pe(2), 10);
  const double x = 7.125;
  double s = 0.0;
  for (int j = -10; j <= 30; ++j) s += fig4(j) * phi.at(phi.index_of(x - j));
  const double b = s - fig4(x);
  EXPECT_NEAR(expected_sq_error(phi, fig4, 1.0, x).bias_sq_term, b * b, 1e-15);
}

TEST(MonteCarlo, ZeroSigmaEqualsBias) {
  const double x = 50.5;
  const MonteCarloResult mc = monte_carlo_mse(pe(3), fig4, 0.0, x, 20, 3, 16);
  const ErrorDecomposition e = expected_sq_error(pe(3), fig4, 0.0, x, 16);
  EXPECT_NEAR(mc.mse, e.bias_sq_term, 1e-12);
  EXPECT_NEAR(mc.std_error, 0.0, 1e-12);
}

TEST(MonteCarlo, MatchesAnalyticWithinThreeStandardErrors) {
  const double x = 50.5;
  const ErrorDecomposition e = expected_sq_error(pe(3), fig4, 0.5, x, 16);
  const MonteCarloResult mc = monte_carlo_mse(pe(3), fig4, 0.5, x, 100000, 11, 16);
  EXPECT_EQ(mc.trials, 100000);
  EXPECT_LE(std::abs(mc.mse - e.total), 3.0 * mc.std_error) << mc.mse << " vs " << e.total;
}

TEST(MonteCarlo, ConvergesOverThreeDecades) {
  const double x = 50.25;
  const double want = expected_sq_error(pe(2), fig4, 0.5, x, 12).total;
  double prev_se = INFINITY;
  for (long trials : {1000L, 10000L, 100000L}) {
    const MonteCarloResult mc = monte_carlo_mse(pe(2), fig4, 0.5, x, trials, 5, 12);
    EXPECT_LE(std::abs(mc.mse - want), 4.0 * mc.std_error) << trials;
    EXPECT_LT(mc.std_error, prev_se / 2.5) << trials;
    prev_se = mc.std_error;
  }
}

TEST(MonteCarlo, IndependentOfThreadCount) {
  omp_set_num_threads(1);
  const MonteCarloResult a = monte_carlo_mse(pe(2), fig4, 0.5, 10.5, 2000, 9, 10);
  omp_set_num_threads(4);
  const MonteCarloResult b = monte_carlo_mse(pe(2), fig4, 0.5, 10.5, 2000, 9, 10);
  EXPECT_EQ(a.mse, b.mse);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(MonteCarlo, RejectsNarrowWindowAndOffGridPoint) {
  const std::pair<long, long> narrow{48, 52};
  EXPECT_THROW((void)monte_carlo_mse(pe(3), fig4, 0.5, 50.5, 10, 1, 10, narrow), std::invalid_argument);
  EXPECT_THROW((void)monte_carlo_mse(pe(3), fig4, 0.5, 0.1, 10, 1, 10), std::invalid_argument);
  EXPECT_THROW((void)monte_carlo_mse(pe(3), fig4, 0.5, 0.5, 0, 1, 10), std::invalid_argument);
}

TEST(Conjectures, MaxDecreasesInN) {
  const ConjectureReport r = conjecture_probe({1}, {3, 5, 7}, 12);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_NEAR(r.rows[0].stats.max, 0.1489, 0.002);
  EXPECT_NEAR(r.rows[1].stats.max, 0.0849, 0.002);
  EXPECT_NEAR(r.rows[2].stats.max, 0.0592, 0.002);
  ASSERT_EQ(r.max_decreasing_in_n.size(), 1u);
  EXPECT_TRUE(r.max_decreasing_in_n[0].second);
}

TEST(Conjectures, IntegralIncreasesInDegree) {
  const ConjectureReport r = conjecture_probe({1, 3, 5}, {7}, 12);
  EXPECT_NEAR(r.rows[0].stats.integral, 0.0591, 0.002);
  EXPECT_NEAR(r.rows[1].stats.integral, 0.1564, 0.002);
  EXPECT_NEAR(r.rows[2].stats.integral, 0.2573, 0.002);
  ASSERT_EQ(r.integral_increasing_in_degree.size(), 1u);
  EXPECT_EQ(r.integral_increasing_in_degree[0].first, 7);
  EXPECT_TRUE(r.integral_increasing_in_degree[0].second);
}

TEST(Conjectures, HatRow) {
  const ConjectureReport r = conjecture_probe({1}, {1}, 10);
  EXPECT_DOUBLE_EQ(r.rows[0].stats.min, 0.5);
  EXPECT_DOUBLE_EQ(r.rows[0].stats.max, 1.0);
}

TEST(Conjectures, RejectsBadInput) {
  EXPECT_THROW((void)conjecture_probe({}, {3}, 10), std::invalid_argument);
  EXPECT_THROW((void)conjecture_probe({7}, {3}, 10), std::invalid_argument);
  EXPECT_THROW((void)conjecture_probe({1}, {3}, 8), std::invalid_argument);
}
