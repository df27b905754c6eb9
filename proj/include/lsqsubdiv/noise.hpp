#pragma once

#include "lsqsubdiv/lsqfit.hpp"
#include "lsqsubdiv/schemes.hpp"
#include "lsqsubdiv/subdivide.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace lsqsub {

using RealFunction = std::function<double(double)>;

/// Additive i.i.d. N(0, sigma^2) noise. Draws come from std::mt19937_64
/// seeded with `seed`, transformed by std::normal_distribution (the
/// Marsaglia polar method in libstdc++). Same seed, same build: same draws.
struct NoiseModel {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

struct PsiStats {
  double min = 0.0;
  double max = 0.0;
  double integral = 0.0;
  double grid_step = 0.0;
};

struct ErrorDecomposition {
  double variance_term = 0.0;
  double bias_sq_term = 0.0;
  double total = 0.0;
};

/// Generator for the independent stream of Monte-Carlo trial `trial`.
[[nodiscard]] std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial);

/// y_i = f(x_i) + sigma * eps_i.
[[nodiscard]] std::vector<double> sample_noisy(const RealFunction& f, const NodeSet& grid,
                                               const NoiseModel& model);
[[nodiscard]] std::vector<double> sample_noisy(const RealFunction& f, const NodeSet& grid,
                                               double sigma, std::mt19937_64& engine);

/// psi(x) = sum_i phi(x - i)^2 on the 2^{-K} grid over [0, 1]; K >= 6.
[[nodiscard]] LimitSamples psi(const SchemeSpec& spec, int K);
[[nodiscard]] LimitSamples psi_from_phi(const LimitSamples& phi);

/// Linear interpolation of grid samples; zero outside the sampled range.
[[nodiscard]] double interpolate(const LimitSamples& s, double x);

/// Extrema over the dyadic grid; integral by the trapezoid rule on an
/// equispaced grid of step `h` over [0, 1], psi linearly interpolated.
/// psi_stats requires K >= 9.
[[nodiscard]] PsiStats psi_stats(const SchemeSpec& spec, int K, double h = 0.002);
[[nodiscard]] PsiStats psi_stats_from(const LimitSamples& psi_samples, double h = 0.002);

/// Trapezoid approximation of the integral of phi^2 over its grid.
[[nodiscard]] double l2_norm_sq(const LimitSamples& phi);

/// sigma^2 psi(x) + (sum_j f(j) phi(x - j) - f(x))^2; x must lie on phi's grid.
[[nodiscard]] ErrorDecomposition expected_sq_error(const LimitSamples& phi, const RealFunction& f,
                                                   double sigma, double x);
[[nodiscard]] ErrorDecomposition expected_sq_error(const SchemeSpec& spec, const RealFunction& f,
                                                   double sigma, double x, int K);

struct MonteCarloResult {
  double mse = 0.0;
  double std_error = 0.0; ///< standard error of the mean of squared errors
  long trials = 0;
};

/// Empirical E[(f_hat(x) - f(x))^2] with f_hat the S^K limit of noisy
/// samples on the integer window [window.first, window.second] (default: the
/// exact dependency window of x). Trial t draws from trial_engine(seed, t),
/// so the estimate does not depend on the thread count.
[[nodiscard]] MonteCarloResult monte_carlo_mse(const SchemeSpec& spec, const RealFunction& f, double sigma,
                                               double x, long trials, std::uint64_t seed, int K = 16,
                                               std::optional<std::pair<long, long>> window = std::nullopt);

struct ConjectureRow {
  int degree = 0;
  int n = 0;
  PsiStats stats;
};

struct ConjectureReport {
  std::vector<ConjectureRow> rows;
  /// per degree: max psi strictly decreasing along increasing n
  std::vector<std::pair<int, bool>> max_decreasing_in_n;
  /// per n: integral strictly increasing along increasing degree
  std::vector<std::pair<int, bool>> integral_increasing_in_degree;
};

/// psi statistics of primal_even S_n^d over the (degree, n) grid.
[[nodiscard]] ConjectureReport conjecture_probe(const std::vector<int>& degrees, const std::vector<int>& ns,
                                                int K);

} // namespace lsqsub
