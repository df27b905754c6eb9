#include "lsqsubdiv/llr.hpp"

#include "lsqsubdiv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace lsqsub {

namespace {

void check_data(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("llr: xs and ys differ in length");
  if (xs.size() < 2) throw std::invalid_argument("llr: need at least two data points");
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) throw std::invalid_argument("llr: non-finite data");
}

struct Fit {
  bool ok = false;
  double alpha = 0.0;
  double beta = 0.0;
};

// Weighted least squares about the weighted mean of the abscissae, which
// stays accurate when the weights are very uneven; `skip` excludes one
// observation (leave-one-out).
Fit solve_local(std::span<const double> xs, std::span<const double> ys, double x_star, double bandwidth,
                std::size_t skip) {
  const double inv = 1.0 / (2.0 * bandwidth * bandwidth);
  thread_local std::vector<double> w;
  w.assign(xs.size(), 0.0);
  double s0 = 0.0, sx = 0.0, sy = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i == skip) continue;
    const double d = xs[i] - x_star;
    w[i] = std::exp(-d * d * inv);
    s0 += w[i];
    sx += w[i] * d;
    sy += w[i] * ys[i];
    s2 += w[i] * d * d;
  }
  Fit f;
  if (!(s0 > 0.0)) return f;
  const double xbar = sx / s0, ybar = sy / s0;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i == skip) continue;
    const double dx = (xs[i] - x_star) - xbar;
    sxx += w[i] * dx * dx;
    sxy += w[i] * dx * (ys[i] - ybar);
  }
  // sxx * s0 is the determinant of the centred normal equations
  if (!(sxx > 1e-12 * s2) || !std::isfinite(sxx)) return f;
  f.ok = true;
  f.beta = sxy / sxx;
  f.alpha = ybar - f.beta * xbar;
  return f;
}

constexpr std::size_t kNoSkip = static_cast<std::size_t>(-1);

} // namespace

LocalFit llr_fit(std::span<const double> xs, std::span<const double> ys, double x_star, double bandwidth) {
  check_data(xs, ys);
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) throw std::invalid_argument("llr_fit: bandwidth must be > 0");
  const Fit f = solve_local(xs, ys, x_star, bandwidth, kNoSkip);
  if (!f.ok) throw NumericError("llr_fit: weighted design is singular at x* = " + std::to_string(x_star));
  return {f.alpha, f.beta, x_star, bandwidth};
}

double loo_score(std::span<const double> xs, std::span<const double> ys, double bandwidth) {
  check_data(xs, ys);
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Fit f = solve_local(xs, ys, xs[i], bandwidth, i);
    if (!f.ok) return std::numeric_limits<double>::infinity();
    const double r = ys[i] - f.alpha;
    s += r * r;
  }
  return s / static_cast<double>(xs.size());
}

BandwidthSelection select_bandwidth(std::span<const double> xs, std::span<const double> ys,
                                    std::span<const double> candidates) {
  check_data(xs, ys);
  if (candidates.empty()) throw std::invalid_argument("select_bandwidth: no candidates");
  for (double h : candidates)
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("select_bandwidth: candidates must be > 0");
  BandwidthSelection sel;
  sel.candidates.assign(candidates.begin(), candidates.end());
  sel.loo_scores.resize(candidates.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < candidates.size(); ++k) sel.loo_scores[k] = loo_score(xs, ys, candidates[k]);

  double best = std::numeric_limits<double>::infinity();
  for (double sc : sel.loo_scores) best = std::min(best, sc);
  if (!std::isfinite(best)) throw NumericError("select_bandwidth: every candidate gives a singular fit");

  // Scores within rounding of the optimum count as ties, measured against
  // the spread of the data.
  double mean = 0.0, var = 0.0;
  for (double y : ys) mean += y;
  mean /= static_cast<double>(ys.size());
  for (double y : ys) var += (y - mean) * (y - mean);
  var /= static_cast<double>(ys.size());
  const double tie = 1e-12 * std::max(var, std::numeric_limits<double>::min());
  sel.bandwidth = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < candidates.size(); ++k)
    if (sel.loo_scores[k] <= best + tie) sel.bandwidth = std::min(sel.bandwidth, candidates[k]);
  return sel;
}

std::vector<double> default_bandwidth_candidates(double h) {
  if (!(h > 0.0)) throw std::invalid_argument("default_bandwidth_candidates: spacing must be > 0");
  std::vector<double> c(12);
  const double lo = 0.25 * h, ratio = std::pow(32.0 / 0.25, 1.0 / 11.0);
  for (int k = 0; k < 12; ++k) c[k] = lo * std::pow(ratio, k);
  c.back() = 32.0 * h;
  return c;
}

std::vector<double> llr_curve(std::span<const double> xs, std::span<const double> ys, const NodeSet& grid,
                              double bandwidth) {
  check_data(xs, ys);
  if (!(bandwidth > 0.0)) throw std::invalid_argument("llr_curve: bandwidth must be > 0");
  std::vector<double> out(static_cast<std::size_t>(grid.count));
  std::vector<char> bad(out.size(), 0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < grid.count; ++i) {
    const Fit f = solve_local(xs, ys, grid.node(i), bandwidth, kNoSkip);
    out[static_cast<std::size_t>(i)] = f.alpha;
    bad[static_cast<std::size_t>(i)] = f.ok ? 0 : 1;
  }
  for (std::size_t i = 0; i < bad.size(); ++i)
    if (bad[i]) throw NumericError("llr_curve: weighted design is singular at x* = " + std::to_string(grid.node(static_cast<int>(i))));
  return out;
}

double l2_error(std::span<const double> estimate, std::span<const double> truth, double step) {
  if (estimate.size() != truth.size()) throw std::invalid_argument("l2_error: length mismatch");
  if (!(step > 0.0)) throw std::invalid_argument("l2_error: step must be > 0");
  double s = 0.0;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    const double d = estimate[i] - truth[i];
    s += d * d;
  }
  return std::sqrt(step * s);
}

} // namespace lsqsub
