#include "lsqsubdiv/noise.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace lsqsub {

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

std::vector<double> sample_noisy(const RealFunction& f, const NodeSet& grid, double sigma,
                                 std::mt19937_64& engine) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sample_noisy: sigma must be >= 0");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> y(static_cast<std::size_t>(grid.count));
  for (int i = 0; i < grid.count; ++i) {
    const double fx = f(grid.node(i));
    if (!std::isfinite(fx)) throw std::invalid_argument("sample_noisy: non-finite function value");
    y[static_cast<std::size_t>(i)] = fx + sigma * normal(engine);
  }
  return y;
}

std::vector<double> sample_noisy(const RealFunction& f, const NodeSet& grid, const NoiseModel& model) {
  std::mt19937_64 engine(model.seed);
  return sample_noisy(f, grid, model.sigma, engine);
}

LimitSamples psi_from_phi(const LimitSamples& phi) {
  const long scale = 1L << phi.resolution;
  LimitSamples out;
  out.resolution = phi.resolution;
  out.first_index = 0;
  out.values.assign(static_cast<std::size_t>(scale) + 1, 0.0);
  for (long t = 0; t <= scale; ++t) {
    double s = 0.0;
    // i ranges over integer shifts with phi index t - i*scale inside phi's window
    const long i_lo = -((phi.last_index() - t) / scale) - 1;
    const long i_hi = (t - phi.first_index) / scale + 1;
    for (long i = i_lo; i <= i_hi; ++i) {
      const double v = phi.at(t - i * scale);
      s += v * v;
    }
    out.values[static_cast<std::size_t>(t)] = s;
  }
  return out;
}

LimitSamples psi(const SchemeSpec& spec, int K) {
  if (K < 6) throw std::invalid_argument("psi: K must be >= 6");
  return psi_from_phi(basic_limit_function(spec, K));
}

double interpolate(const LimitSamples& s, double x) {
  const double u = std::ldexp(x - s.offset, s.resolution);
  const double fl = std::floor(u);
  const long i = static_cast<long>(fl);
  const double t = u - fl;
  if (t == 0.0) return s.at(i);
  return (1.0 - t) * s.at(i) + t * s.at(i + 1);
}

PsiStats psi_stats_from(const LimitSamples& ps, double h) {
  if (ps.values.empty()) throw std::invalid_argument("psi_stats: empty samples");
  if (!(h > 0.0) || h > 1.0) throw std::invalid_argument("psi_stats: step must be in (0, 1]");
  PsiStats st;
  st.min = *std::min_element(ps.values.begin(), ps.values.end());
  st.max = *std::max_element(ps.values.begin(), ps.values.end());
  st.grid_step = h;
  const long cells = std::lround(1.0 / h);
  if (std::abs(cells * h - 1.0) > 1e-12) throw std::invalid_argument("psi_stats: 1/h must be an integer");
  double sum = 0.0;
  for (long k = 0; k <= cells; ++k) {
    const double v = interpolate(ps, static_cast<double>(k) / static_cast<double>(cells));
    sum += (k == 0 || k == cells) ? 0.5 * v : v;
  }
  st.integral = sum * h;
  return st;
}

PsiStats psi_stats(const SchemeSpec& spec, int K, double h) {
  if (K < 9) throw std::invalid_argument("psi_stats: K must be >= 9");
  return psi_stats_from(psi(spec, K), h);
}

double l2_norm_sq(const LimitSamples& phi) {
  double s = 0.0;
  for (std::size_t k = 0; k < phi.values.size(); ++k) {
    const double v = phi.values[k] * phi.values[k];
    s += (k == 0 || k + 1 == phi.values.size()) ? 0.5 * v : v;
  }
  return s * phi.step();
}

ErrorDecomposition expected_sq_error(const LimitSamples& phi, const RealFunction& f, double sigma, double x) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("expected_sq_error: sigma must be >= 0");
  const long scale = 1L << phi.resolution;
  const long g = phi.index_of(x);
  // nonzero translates: phi index g - j*scale strictly inside phi's window
  const long j_lo = static_cast<long>(std::floor((x - phi.x(phi.last_index())))) ;
  const long j_hi = static_cast<long>(std::ceil((x - phi.x(phi.first_index))));
  double psi_x = 0.0, approx = 0.0;
  for (long j = j_lo; j <= j_hi; ++j) {
    const double w = phi.at(g - j * scale);
    if (w == 0.0) continue;
    psi_x += w * w;
    approx += f(static_cast<double>(j)) * w;
  }
  ErrorDecomposition e;
  e.variance_term = sigma * sigma * psi_x;
  const double bias = approx - f(x);
  e.bias_sq_term = bias * bias;
  e.total = e.variance_term + e.bias_sq_term;
  return e;
}

ErrorDecomposition expected_sq_error(const SchemeSpec& spec, const RealFunction& f, double sigma, double x,
                                     int K) {
  return expected_sq_error(basic_limit_function(spec, K), f, sigma, x);
}

MonteCarloResult monte_carlo_mse(const SchemeSpec& spec, const RealFunction& f, double sigma, double x,
                                 long trials, std::uint64_t seed, int K,
                                 std::optional<std::pair<long, long>> window) {
  if (trials < 1) throw std::invalid_argument("monte_carlo_mse: trials must be >= 1");
  if (!(sigma >= 0.0)) throw std::invalid_argument("monte_carlo_mse: sigma must be >= 0");
  const Mask a = mask(spec);
  const double scaled = std::ldexp(x, K);
  if (std::abs(scaled - std::round(scaled)) > 1e-9)
    throw std::invalid_argument("monte_carlo_mse: x is not on the 2^-K grid");
  const long g = std::lround(scaled);
  const auto need = dependency_window(a, K, g);
  const auto win = window.value_or(need);
  if (win.first > need.first || win.second < need.second)
    throw std::invalid_argument("monte_carlo_mse: sample window [" + std::to_string(win.first) + ", " +
                                std::to_string(win.second) + "] does not cover the dependency window [" +
                                std::to_string(need.first) + ", " + std::to_string(need.second) + "]");

  const NodeSet nodes(static_cast<double>(win.first), 1.0, static_cast<int>(win.second - win.first + 1));
  std::vector<double> exact(static_cast<std::size_t>(nodes.count));
  for (int i = 0; i < nodes.count; ++i) exact[static_cast<std::size_t>(i)] = f(nodes.node(i));
  const double fx = f(x);

  std::vector<double> sq(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(static)
  for (long t = 0; t < trials; ++t) {
    auto engine = trial_engine(seed, static_cast<std::uint64_t>(t));
    std::normal_distribution<double> normal(0.0, 1.0);
    SignalLevel y{0, win.first, exact};
    for (auto& v : y.values) v += sigma * normal(engine);
    const double err = limit_value_at(a, y, K, g) - fx;
    sq[static_cast<std::size_t>(t)] = err * err;
  }

  double mean = 0.0;
  for (double v : sq) mean += v;
  mean /= static_cast<double>(trials);
  double var = 0.0;
  for (double v : sq) var += (v - mean) * (v - mean);
  var = trials > 1 ? var / static_cast<double>(trials - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(trials)), trials};
}

ConjectureReport conjecture_probe(const std::vector<int>& degrees, const std::vector<int>& ns, int K) {
  if (degrees.empty() || ns.empty()) throw std::invalid_argument("conjecture_probe: empty degree or n set");
  // Everything that can throw is checked here, outside the parallel region.
  if (K < 9 || K > 26) throw std::invalid_argument("conjecture_probe: K must be in [9, 26]");
  ConjectureReport rep;
  for (int d : degrees)
    for (int n : ns) SchemeSpec{Family::primal_even, n, d}.validate();

  rep.rows.resize(degrees.size() * ns.size());
#pragma omp parallel for schedule(dynamic) collapse(2)
  for (std::size_t i = 0; i < degrees.size(); ++i)
    for (std::size_t j = 0; j < ns.size(); ++j) {
      const SchemeSpec spec{Family::primal_even, ns[j], degrees[i]};
      rep.rows[i * ns.size() + j] = {degrees[i], ns[j], psi_stats(spec, K)};
    }

  std::map<std::pair<int, int>, PsiStats> by;
  for (const auto& r : rep.rows) by[{r.degree, r.n}] = r.stats;
  std::vector<int> ds(degrees), nn(ns);
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  std::sort(nn.begin(), nn.end());
  nn.erase(std::unique(nn.begin(), nn.end()), nn.end());
  for (int d : ds) {
    bool ok = true;
    for (std::size_t k = 1; k < nn.size(); ++k) ok = ok && by[{d, nn[k]}].max < by[{d, nn[k - 1]}].max;
    rep.max_decreasing_in_n.emplace_back(d, ok);
  }
  for (int n : nn) {
    bool ok = true;
    for (std::size_t k = 1; k < ds.size(); ++k) ok = ok && by[{ds[k], n}].integral > by[{ds[k - 1], n}].integral;
    rep.integral_increasing_in_degree.emplace_back(n, ok);
  }
  return rep;
}

} // namespace lsqsub
