#pragma once

#include "lsqsubdiv/lsqfit.hpp"

#include <span>
#include <vector>

namespace lsqsub {

/// Local linear fit y ~ alpha + beta (x - x_star) with Gaussian kernel
/// weights exp(-(x - x_star)^2 / (2 bandwidth^2)). alpha is the estimate.
struct LocalFit {
  double alpha = 0.0;
  double beta = 0.0;
  double x_star = 0.0;
  double bandwidth = 1.0;
};

/// Throws NumericError when the weighted design is singular.
[[nodiscard]] LocalFit llr_fit(std::span<const double> xs, std::span<const double> ys, double x_star,
                               double bandwidth);

struct BandwidthSelection {
  double bandwidth = 0.0;
  std::vector<double> candidates;
  /// Mean leave-one-out squared prediction error; +inf where every fit was singular.
  std::vector<double> loo_scores;
};

/// Leave-one-out cross validation over the candidates. Scores within
/// 1e-12 * var(ys) of the best are ties, resolved toward the smaller bandwidth. Throws NumericError if no candidate yields a fit.
[[nodiscard]] BandwidthSelection select_bandwidth(std::span<const double> xs, std::span<const double> ys,
                                                  std::span<const double> candidates);

/// Mean leave-one-out squared error of one bandwidth; +inf if any held-out
/// fit is singular.
[[nodiscard]] double loo_score(std::span<const double> xs, std::span<const double> ys, double bandwidth);

/// 12 geometric points spanning [0.25 h, 32 h] for data spacing h.
[[nodiscard]] std::vector<double> default_bandwidth_candidates(double data_spacing);

[[nodiscard]] std::vector<double> llr_curve(std::span<const double> xs, std::span<const double> ys,
                                            const NodeSet& grid, double bandwidth);

/// sqrt(step * sum (estimate_i - truth_i)^2).
[[nodiscard]] double l2_error(std::span<const double> estimate, std::span<const double> truth, double step);

} // namespace lsqsub
