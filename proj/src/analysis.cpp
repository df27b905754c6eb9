#include "lsqsubdiv/analysis.hpp"

#include "lsqsubdiv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lsqsub {

namespace {

constexpr double kNecessaryTol = 1e-12;
constexpr double kMultiplicityTol = 1e-10;

double coeff_scale(const Laurent<double>& p) {
  double s = 0.0;
  for (double c : p.coeffs) s = std::max(s, std::abs(c));
  return s;
}

// One float division by (1+z); nullopt-like signalling through the bool.
bool divide_float(Laurent<double>& p, double tol) {
  const double scale = std::max(coeff_scale(p), 1e-300);
  auto [q, r] = divide_by_one_plus_z(p);
  if (q.empty() || std::abs(r) > tol * scale) return false;
  p = std::move(q);
  return true;
}

bool divide_exact(Laurent<Rational>& p) {
  auto [q, r] = divide_by_one_plus_z(p);
  if (q.empty() || r != 0) return false;
  p = std::move(q);
  return true;
}

} // namespace

bool necessary_conditions(const Symbol& s, double tol) {
  if (s.exact) {
    const Laurent<Rational>& p = *s.exact;
    return p(Rational(1)) == 2 && p(Rational(-1)) == 0;
  }
  return std::abs(s(1.0) - 2.0) <= tol && std::abs(s(-1.0)) <= tol;
}

Symbol divide_out(const Symbol& s, int power) {
  if (power < 0) throw std::invalid_argument("divide_out: power must be >= 0");
  if (s.exact) {
    Laurent<Rational> p = *s.exact;
    for (int k = 0; k < power; ++k)
      if (!divide_exact(p))
        throw NumericError("divide_out: (1+z)^" + std::to_string(power) +
                           " does not divide the symbol (exact remainder)");
    return Symbol::from_exact(std::move(p));
  }
  Laurent<double> p = s.values;
  for (int k = 0; k < power; ++k)
    if (!divide_float(p, kNecessaryTol))
      throw NumericError("divide_out: (1+z)^" + std::to_string(power) +
                         " does not divide the symbol (remainder above tolerance)");
  return Symbol::from_values(std::move(p));
}

int multiplicity_at_minus_one(const Symbol& s) {
  int m = 0;
  if (s.exact) {
    Laurent<Rational> p = *s.exact;
    while (divide_exact(p)) ++m;
    return m;
  }
  Laurent<double> p = s.values;
  while (divide_float(p, kMultiplicityTol)) ++m;
  return m;
}

Symbol scaled(const Symbol& s, const Rational& factor) {
  if (s.exact) return Symbol::from_exact(factor * *s.exact);
  return Symbol::from_values(static_cast<double>(factor) * s.values);
}

double scheme_norm(const Symbol& s) {
  double sums[2] = {0.0, 0.0};
  for (std::size_t k = 0; k < s.values.coeffs.size(); ++k) {
    const long idx = s.values.first_index + static_cast<long>(k);
    sums[((idx % 2) + 2) % 2] += std::abs(s.values.coeffs[k]);
  }
  return std::max(sums[0], sums[1]);
}

double iterated_norm(const Symbol& s, int L, kernels::Exec exec) {
  if (L < 1) throw std::invalid_argument("iterated_norm: L must be >= 1");
  if (L > 24) throw std::invalid_argument("iterated_norm: L must be <= 24 (coefficient count guard)");
  const std::vector<double>& b = s.values.coeffs;
  if (b.empty()) throw std::invalid_argument("iterated_norm: empty symbol");
  std::vector<double> prod = b;
  for (int l = 1; l < L; ++l) prod = kernels::dilated_product(prod, b, std::size_t{1} << l, exec);
  // The residue classes are taken relative to the product's first index;
  // a shift only permutes them.
  return kernels::residue_abs_max(prod, std::size_t{1} << L, exec);
}

RegularityReport holder_lower_bound(const Mask& mask, int L, kernels::Exec exec) {
  const Symbol a = symbol(mask);
  if (!necessary_conditions(a))
    throw NumericError("holder_lower_bound: symbol violates a(1) = 2, a(-1) = 0");
  RegularityReport r;
  r.smoothness_factor_multiplicity = multiplicity_at_minus_one(a);
  r.iterations = L;
  const int m = r.smoothness_factor_multiplicity;
  const Symbol b = scaled(divide_out(a, m), Rational(BigInt(1) << m));
  r.iterated_norm = iterated_norm(b, L, exec);
  if (!(r.iterated_norm > 0.0)) throw NumericError("holder_lower_bound: vanishing iterated norm");
  r.lower_bound = m - std::log2(r.iterated_norm) / L;
  return r;
}

SignalLevel forward_difference(const SignalLevel& signal) {
  if (signal.values.size() < 2) throw std::invalid_argument("forward_difference: need at least two values");
  SignalLevel out;
  out.level = signal.level;
  out.first_index = signal.first_index;
  out.values.resize(signal.values.size() - 1);
  for (std::size_t i = 0; i + 1 < signal.values.size(); ++i)
    out.values[i] = signal.values[i + 1] - signal.values[i];
  return out;
}

} // namespace lsqsub
