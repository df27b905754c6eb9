#include "lsqsubdiv/subdivide.hpp"

#include "lsqsubdiv/analysis.hpp"
#include "lsqsubdiv/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace lsqsub {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

void check_K(int K, const char* who) {
  if (K < 0 || K > 26) throw std::invalid_argument(std::string(who) + ": K must be in [0, 26]");
}

} // namespace

long LimitSamples::index_of(double xv) const {
  const double scaled = std::ldexp(xv - offset, resolution);
  const double r = std::round(scaled);
  if (std::abs(scaled - r) > 1e-9)
    throw std::invalid_argument("LimitSamples: abscissa " + std::to_string(xv) + " is not on the 2^-" +
                                std::to_string(resolution) + " grid");
  return static_cast<long>(r);
}

SignalLevel refine(const Mask& mask, const SignalLevel& signal, kernels::Exec exec) {
  if (signal.values.empty()) throw std::invalid_argument("refine: empty signal");
  if (mask.coefficients.empty()) throw std::invalid_argument("refine: empty mask");
  SignalLevel out;
  out.level = signal.level + 1;
  out.first_index = 2 * signal.first_index + mask.first_index;
  out.values = kernels::refine(mask.coefficients, signal.values, exec);
  return out;
}

SignalLevel refine_many(const Mask& mask, SignalLevel signal, int steps, kernels::Exec exec) {
  if (steps < 0) throw std::invalid_argument("refine_many: steps must be >= 0");
  for (int k = 0; k < steps; ++k) signal = refine(mask, signal, exec);
  return signal;
}

std::pair<long, long> fully_supported_range(const Mask& mask, const SignalLevel& signal) {
  return {2 * signal.first_index + mask.last_index(), 2 * signal.last_index() + mask.first_index};
}

LimitSamples basic_limit_function(const Mask& mask, int K) {
  check_K(K, "basic_limit_function");
  const SignalLevel s = refine_many(mask, SignalLevel::delta(), K);
  LimitSamples phi;
  phi.resolution = K;
  const long scale = 1L << K;
  phi.first_index = mask.first_index * scale;
  const long last = static_cast<long>(mask.last_index()) * scale;
  phi.values.assign(static_cast<std::size_t>(last - phi.first_index + 1), 0.0);
  for (long i = s.first_index; i <= s.last_index(); ++i)
    if (i >= phi.first_index && i <= last) phi.values[static_cast<std::size_t>(i - phi.first_index)] = s.at(i);
  return phi;
}

LimitSamples basic_limit_function(const SchemeSpec& spec, int K) {
  return basic_limit_function(mask(spec), K);
}

Eigen::MatrixXd transposed_subdivision_matrix(const Mask& mask) {
  const int lo = mask.first_index + 1;
  const int hi = mask.last_index() - 1;
  if (hi < lo) {
    // two-tap support: phi vanishes at every integer but one
    return Eigen::MatrixXd::Identity(1, 1);
  }
  const int size = hi - lo + 1;
  Eigen::MatrixXd m(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) m(i, j) = mask.at(2 * (lo + i) - (lo + j));
  return m;
}

Eigen::MatrixXd two_slanted_matrix(int n) {
  if (n < 1) throw std::invalid_argument("two_slanted_matrix: n must be >= 1");
  const int size = 4 * n - 3;
  const double r = 1.0 / (2 * n - 1);
  const double s = 1.0 / (2 * n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
  for (int k = 0; k < size; ++k)
    for (int c = std::max(0, 2 * k - 4 * n + 3); c <= std::min(size - 1, 2 * k + 1); ++c)
      a(k, c) = c % 2 == 0 ? r : s;
  return a;
}

Eigen::MatrixXd folded_two_slanted_matrix(int n) {
  const Eigen::MatrixXd a = two_slanted_matrix(n);
  const int half = 2 * n - 1;   // rows/cols for phi(-2n+2) .. phi(0)
  const int center = half - 1;  // column of phi(0) in a
  Eigen::MatrixXd f(half, half);
  for (int i = 0; i < half; ++i)
    for (int j = 0; j < half; ++j)
      f(i, j) = j == center ? a(i, j) : a(i, j) + a(i, 2 * center - j);
  return f;
}

SignalLevel integer_values_eigen(const Eigen::MatrixXd& matrix, long first_index) {
  constexpr double tol = 1e-10;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(matrix, true);
  if (solver.info() != Eigen::Success) throw NumericError("integer_values_eigen: eigensolver failed");
  int hits = 0;
  Eigen::Index which = -1;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    if (std::abs(solver.eigenvalues()(k) - std::complex<double>(1.0, 0.0)) < tol) {
      ++hits;
      which = k;
    }
  }
  if (hits != 1)
    throw NumericError("integer_values_eigen: eigenvalue 1 has multiplicity " + std::to_string(hits) +
                       " (expected 1)");
  const Eigen::VectorXd v = solver.eigenvectors().col(which).real();
  const double total = v.sum();
  if (std::abs(total) < tol) throw NumericError("integer_values_eigen: eigenvector sums to zero");
  SignalLevel out;
  out.first_index = first_index;
  out.values.resize(static_cast<std::size_t>(v.size()));
  for (Eigen::Index k = 0; k < v.size(); ++k) out.values[static_cast<std::size_t>(k)] = v(k) / total;
  return out;
}

SignalLevel integer_values_eigen(const SchemeSpec& spec) {
  spec.validate();
  const Mask a = mask(spec);
  if (spec.family == Family::primal_even && spec.degree == 1)
    return integer_values_eigen(two_slanted_matrix(spec.n), -(2L * spec.n - 2));
  return integer_values_eigen(transposed_subdivision_matrix(a), a.first_index + 1);
}

LimitSamples evaluate_limit(const Mask& mask, const SignalLevel& f0, int K, kernels::Exec exec) {
  check_K(K, "evaluate_limit");
  const SignalLevel s = refine_many(mask, f0, K, exec);
  return {K, s.first_index, s.values, 0.0};
}

LimitSamples translate_sum(const LimitSamples& phi, const SignalLevel& f0) {
  if (f0.values.empty()) throw std::invalid_argument("translate_sum: empty data");
  const long scale = 1L << phi.resolution;
  LimitSamples out;
  out.resolution = phi.resolution;
  out.offset = phi.offset;
  out.first_index = f0.first_index * scale + phi.first_index;
  const long last = f0.last_index() * scale + phi.last_index();
  out.values.assign(static_cast<std::size_t>(last - out.first_index + 1), 0.0);
  for (long j = f0.first_index; j <= f0.last_index(); ++j) {
    const double fj = f0.at(j);
    if (fj == 0.0) continue;
    const long base = j * scale + phi.first_index - out.first_index;
    for (std::size_t t = 0; t < phi.values.size(); ++t)
      out.values[static_cast<std::size_t>(base) + t] += fj * phi.values[t];
  }
  return out;
}

std::pair<long, long> dependency_window(const Mask& mask, int K, long index) {
  long a = index, b = index;
  for (int k = 0; k < K; ++k) {
    a = ceil_div(a - mask.last_index(), 2);
    b = floor_div(b - mask.first_index, 2);
  }
  return {a, b};
}

double limit_value_at(const Mask& mask, const SignalLevel& f0, int K, long index) {
  check_K(K, "limit_value_at");
  // Needed index window at every level, from level K down to 0.
  std::vector<std::pair<long, long>> need(static_cast<std::size_t>(K) + 1);
  need[K] = {index, index};
  for (int k = K; k > 0; --k) {
    const auto [a, b] = need[k];
    need[k - 1] = {ceil_div(a - mask.last_index(), 2), floor_div(b - mask.first_index, 2)};
  }
  SignalLevel cur;
  cur.first_index = need[0].first;
  cur.values.resize(static_cast<std::size_t>(need[0].second - need[0].first + 1));
  for (long i = need[0].first; i <= need[0].second; ++i)
    cur.values[static_cast<std::size_t>(i - cur.first_index)] = f0.at(i);
  for (int k = 1; k <= K; ++k) {
    const SignalLevel next = refine(mask, cur, kernels::Exec::serial);
    SignalLevel cropped;
    cropped.level = k;
    cropped.first_index = need[k].first;
    for (long i = need[k].first; i <= need[k].second; ++i) cropped.values.push_back(next.at(i));
    cur = std::move(cropped);
  }
  return cur.values.front();
}

namespace {

SignalLevel convolve(const SignalLevel& f0, const SignalLevel& w) {
  SignalLevel out;
  out.first_index = f0.first_index + w.first_index;
  out.values.assign(f0.values.size() + w.values.size() - 1, 0.0);
  for (std::size_t i = 0; i < f0.values.size(); ++i)
    for (std::size_t j = 0; j < w.values.size(); ++j) out.values[i + j] += f0.values[i] * w.values[j];
  return out;
}

} // namespace

SignalLevel limit_filter_at_integers(const SchemeSpec& spec, const SignalLevel& f0) {
  if (spec.family != Family::primal_even)
    throw std::invalid_argument("limit_filter_at_integers: primal-even family required");
  if (f0.values.empty()) throw std::invalid_argument("limit_filter_at_integers: empty data");
  return convolve(f0, integer_values_eigen(spec));
}

LimitSamples limit_on_interval(const SchemeSpec& spec, const SignalLevel& f0, int K, long a, long b) {
  check_K(K, "limit_on_interval");
  if (a > b) throw std::invalid_argument("limit_on_interval: empty interval");
  if (f0.values.empty()) throw std::invalid_argument("limit_on_interval: empty data");
  const Mask m = mask(spec);
  const SignalLevel w = integer_values_eigen(spec);
  // Only indices whose whole dependency lies inside the data are exact.
  auto crop = [](const SignalLevel& x, long lo, long hi) {
    SignalLevel c{x.level, lo, {}};
    if (lo <= hi)
      c.values.assign(x.values.begin() + (lo - x.first_index), x.values.begin() + (hi - x.first_index) + 1);
    return c;
  };
  // f(2^-K i) = sum_l (S^K f0)_l phi(i - l): refine first, then filter.
  SignalLevel g = f0;
  for (int k = 0; k < K && !g.values.empty(); ++k) {
    const auto r = fully_supported_range(m, g);
    g = crop(refine(m, g), r.first, r.second);
  }
  if (!g.values.empty()) {
    const SignalLevel c = convolve(g, w);
    g = crop(c, g.first_index + w.last_index(), g.last_index() + w.first_index);
  }
  const long first = a << K, last = b << K;
  if (g.values.empty() || g.first_index > first || g.last_index() < last)
    throw std::invalid_argument("limit_on_interval: data window too short for [" + std::to_string(a) + ", " +
                                std::to_string(b) + "]");
  LimitSamples out;
  out.resolution = K;
  out.first_index = first;
  out.values.assign(g.values.begin() + (first - g.first_index), g.values.begin() + (last - g.first_index) + 1);
  return out;
}

LimitSamples blf_derivative(const SchemeSpec& spec, int K) {
  check_K(K, "blf_derivative");
  const Mask a = mask(spec);
  const Symbol sym = symbol(a);
  if (multiplicity_at_minus_one(sym) < 2)
    throw NumericError("blf_derivative: (1+z)^2 does not divide the symbol of " + spec.label());
  const Symbol two_q = scaled(divide_out(sym, 1), Rational(2));

  Mask dmask;
  dmask.first_index = two_q.first_index();
  dmask.coefficients = two_q.values.coeffs;

  const SignalLevel diff{0, -1, {1.0, -1.0}};
  const SignalLevel s = refine_many(dmask, diff, K);

  const long scale = 1L << K;
  LimitSamples out;
  out.resolution = K;
  out.offset = -std::ldexp(1.0, -(K + 1));
  // Sample index p of S^K(Delta delta) maps to phi-grid index p + 2^K; the
  // output spans the cells of phi's support [lo, hi].
  out.first_index = static_cast<long>(a.first_index) * scale + 1;
  const long last = static_cast<long>(a.last_index()) * scale;
  out.values.assign(static_cast<std::size_t>(last - out.first_index + 1), 0.0);
  for (long p = s.first_index; p <= s.last_index(); ++p) {
    const long i = p + scale;
    if (i >= out.first_index && i <= last) out.values[static_cast<std::size_t>(i - out.first_index)] = s.at(p);
  }
  return out;
}

} // namespace lsqsub
