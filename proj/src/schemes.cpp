#include "lsqsubdiv/schemes.hpp"

#include "lsqsubdiv/lsqfit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lsqsub {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::primal_even: return "primal-even";
    case Family::dual_even: return "dual-even";
    case Family::primal_odd: return "primal-odd";
    case Family::dual_odd: return "dual-odd";
  }
  return "unknown";
}

Family parse_family(std::string_view s) {
  std::string norm(s);
  for (auto& c : norm)
    if (c == '_') c = '-';
  if (norm == "primal-even") return Family::primal_even;
  if (norm == "dual-even") return Family::dual_even;
  if (norm == "primal-odd") return Family::primal_odd;
  if (norm == "dual-odd") return Family::dual_odd;
  throw std::invalid_argument("unknown scheme family '" + std::string(s) + "'");
}

int SchemeSpec::max_degree() const {
  switch (family) {
    case Family::primal_even:
    case Family::dual_even: return 2 * n - 1;
    case Family::primal_odd:
    case Family::dual_odd: return 2 * n;
  }
  return 0;
}

void SchemeSpec::validate() const {
  if (n < 1) throw std::invalid_argument("scheme: n must be >= 1");
  if (degree < 1) throw std::invalid_argument("scheme: degree must be >= 1");
  if (degree > max_degree())
    throw std::invalid_argument("scheme " + std::string(to_string(family)) + " with n=" +
                                std::to_string(n) + " requires degree <= " +
                                std::to_string(max_degree()) + ", got " + std::to_string(degree));
}

std::string SchemeSpec::label() const {
  std::ostringstream os;
  os << to_string(family) << " n=" << n << " d=" << degree;
  return os.str();
}

double Mask::at(int j) const {
  if (j < first_index || j > last_index()) return 0.0;
  return coefficients[static_cast<std::size_t>(j - first_index)];
}

Symbol Symbol::from_exact(Laurent<Rational> p) {
  Symbol s;
  s.values = to_double(p);
  s.exact = std::move(p);
  return s;
}

Symbol Symbol::from_values(Laurent<double> p) {
  Symbol s;
  s.values = std::move(p);
  return s;
}

std::vector<RefinementRule> refinement_rules(Family family, int n) {
  if (n < 1) throw std::invalid_argument("refinement_rules: n must be >= 1");
  switch (family) {
    case Family::primal_even:
      return {{0, -n + 1, 2 * n - 1, Rational(0)}, {1, -n + 1, 2 * n, Rational(1, 2)}};
    case Family::primal_odd:
      return {{0, -n, 2 * n + 1, Rational(0)}, {1, -n + 1, 2 * n, Rational(1, 2)}};
    case Family::dual_even:
      return {{0, -n + 1, 2 * n, Rational(1, 4)}, {1, -n + 1, 2 * n, Rational(3, 4)}};
    case Family::dual_odd:
      return {{-1, -n, 2 * n + 1, Rational(-1, 4)}, {0, -n, 2 * n + 1, Rational(1, 4)}};
  }
  throw std::invalid_argument("refinement_rules: unknown family");
}

std::pair<int, int> mask_support(Family family, int n) {
  switch (family) {
    case Family::primal_even: return {-(2 * n - 1), 2 * n - 1};
    case Family::dual_even: return {-2 * n, 2 * n - 1};
    case Family::primal_odd: return {-2 * n, 2 * n};
    case Family::dual_odd: return {-(2 * n + 1), 2 * n};
  }
  throw std::invalid_argument("mask_support: unknown family");
}

Mask make_exact_mask(int first_index, std::vector<Rational> coeffs) {
  Mask m;
  m.first_index = first_index;
  m.coefficients.reserve(coeffs.size());
  for (const auto& c : coeffs) m.coefficients.push_back(static_cast<double>(c));
  m.exact = std::move(coeffs);
  return m;
}

namespace {

Mask from_sparse(Family family, int n, const std::map<int, Rational>& a) {
  const auto [lo, hi] = mask_support(family, n);
  std::vector<Rational> coeffs(static_cast<std::size_t>(hi - lo + 1), Rational(0));
  for (const auto& [j, v] : a) {
    if (j < lo || j > hi) throw std::logic_error("mask coefficient outside family support");
    coeffs[static_cast<std::size_t>(j - lo)] = v;
  }
  return make_exact_mask(lo, std::move(coeffs));
}

} // namespace

Mask closed_form_mask(Family family, int n) {
  if (n < 1) throw std::invalid_argument("closed_form_mask: n must be >= 1");
  std::map<int, Rational> a;
  switch (family) {
    case Family::primal_even:
    case Family::primal_odd: {
      const int m = family == Family::primal_even ? n - 1 : n;
      for (int j = -m; j <= m; ++j) a[-2 * j] = Rational(1, 2 * m + 1);
      for (int j = -n + 1; j <= n; ++j) a[1 - 2 * j] = Rational(1, 2 * n);
      break;
    }
    case Family::dual_even: {
      const Rational denom(8 * n * n - 2);
      for (int j = -n + 1; j <= n; ++j) {
        const Rational t = Rational(6 * j - 3) / denom;
        a[-2 * j] = (1 - t) / (2 * n);
        a[1 - 2 * j] = (1 + t) / (2 * n);
      }
      break;
    }
    case Family::dual_odd: {
      const Rational denom(4 * n * (n + 1));
      for (int j = -n; j <= n; ++j) {
        const Rational t = Rational(3 * j) / denom;
        a[-1 - 2 * j] = (1 - t) / (2 * n + 1);
        a[-2 * j] = (1 + t) / (2 * n + 1);
      }
      break;
    }
  }
  return from_sparse(family, n, a);
}

Mask filter_mask(const SchemeSpec& spec) {
  spec.validate();
  std::map<int, Rational> a;
  for (const auto& rule : refinement_rules(spec.family, spec.n)) {
    // A rule with no more nodes than unknowns uses the unique interpolant:
    // values of the underdetermined fit are basis independent only at nodes.
    const int degree = std::min(spec.degree, rule.node_count - 1);
    const auto w = exact_evaluation_filter(rule.node_first, rule.node_count, degree, rule.point);
    for (int k = 0; k < rule.node_count; ++k) {
      const int j = rule.node_first + k;
      a[rule.output_offset - 2 * j] = w[k];
    }
  }
  return from_sparse(spec.family, spec.n, a);
}

Mask mask(const SchemeSpec& spec) {
  spec.validate();
  if (spec.degree == 1) return closed_form_mask(spec.family, spec.n);
  return filter_mask(spec);
}

Symbol symbol(const Mask& m) {
  if (m.exact) {
    Laurent<Rational> p{m.first_index, *m.exact};
    return Symbol::from_exact(std::move(p));
  }
  return Symbol::from_values(Laurent<double>{m.first_index, m.coefficients});
}

bool check_symmetry(const Mask& m, const SchemeSpec& spec, double tol) {
  // primal: a_j = a_{-j}; dual: a_j = a_{-1-j}
  const int reflect = is_dual(spec.family) ? -1 : 0;
  const int lo = std::min(m.first_index, reflect - m.last_index());
  const int hi = std::max(m.last_index(), reflect - m.first_index);
  for (int j = lo; j <= hi; ++j)
    if (std::abs(m.at(j) - m.at(reflect - j)) > tol) return false;
  return true;
}

std::optional<IntegerMask> integer_form(const Mask& m) {
  if (!m.exact) return std::nullopt;
  BigInt den(1);
  for (const auto& c : *m.exact) {
    const BigInt d = boost::multiprecision::denominator(c);
    den = den / boost::multiprecision::gcd(den, d) * d;
  }
  IntegerMask out;
  out.first_index = m.first_index;
  out.denominator = den;
  for (const auto& c : *m.exact) {
    const Rational scaled = c * Rational(den);
    out.numerators.push_back(boost::multiprecision::numerator(scaled));
  }
  return out;
}

std::string format_mask(const Mask& m) {
  std::ostringstream os;
  if (const auto im = integer_form(m)) {
    os << '[';
    for (std::size_t i = 0; i < im->numerators.size(); ++i) os << (i ? "," : "") << im->numerators[i];
    os << "]/" << im->denominator;
    return os.str();
  }
  os.precision(17);
  os << '[';
  for (std::size_t i = 0; i < m.coefficients.size(); ++i) os << (i ? "," : "") << m.coefficients[i];
  os << ']';
  return os.str();
}

} // namespace lsqsub
