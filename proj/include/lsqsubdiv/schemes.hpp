#pragma once

#include "lsqsubdiv/laurent.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lsqsub {

/// Primal rules produce values at old points and midpoints; dual rules at the
/// quarter points. Even families fit 2n data values for the odd/dual rules,
/// odd families 2n+1.
enum class Family { primal_even, dual_even, primal_odd, dual_odd };

[[nodiscard]] std::string_view to_string(Family f);
/// Accepts "primal-even", "primal_even", etc.
[[nodiscard]] Family parse_family(std::string_view s);
[[nodiscard]] constexpr bool is_dual(Family f) {
  return f == Family::dual_even || f == Family::dual_odd;
}

struct SchemeSpec {
  Family family = Family::primal_even;
  int n = 1;
  int degree = 1;

  /// Throws std::invalid_argument if n < 1, degree < 1 or the degree bound
  /// of the family is violated.
  void validate() const;
  [[nodiscard]] int max_degree() const;
  [[nodiscard]] std::string label() const;
};

/// Refinement mask a_j, j = first_index .., with f^{k+1}_i = sum_j a_{i-2j} f^k_j.
/// `exact` holds the rational coefficients when they were derived exactly.
struct Mask {
  int first_index = 0;
  std::vector<double> coefficients;
  std::optional<std::vector<Rational>> exact;

  [[nodiscard]] int last_index() const {
    return first_index + static_cast<int>(coefficients.size()) - 1;
  }
  [[nodiscard]] double at(int j) const;
  [[nodiscard]] std::size_t size() const { return coefficients.size(); }
};

/// Laurent symbol a(z) = sum_j a_j z^j, carrying the exact form when known.
struct Symbol {
  Laurent<double> values;
  std::optional<Laurent<Rational>> exact;

  [[nodiscard]] double operator()(double z) const { return values(z); }
  [[nodiscard]] int first_index() const { return values.first_index; }
  [[nodiscard]] static Symbol from_exact(Laurent<Rational> p);
  [[nodiscard]] static Symbol from_values(Laurent<double> p);
};

/// One refinement rule: f^{k+1}_{2i+output_offset} is the degree-d least
/// squares fit to f^k_{i+j}, j = node_first .. node_first+node_count-1,
/// evaluated at t_i + point (in coarse spacing units).
struct RefinementRule {
  int output_offset = 0;
  int node_first = 0;
  int node_count = 1;
  Rational point;
};

/// The two rules (even and odd output parity) of a family at locality n.
[[nodiscard]] std::vector<RefinementRule> refinement_rules(Family family, int n);

/// Support [lo, hi] of the mask (and of the basic limit function).
[[nodiscard]] std::pair<int, int> mask_support(Family family, int n);

/// Closed-form rule for degree 1, filter construction otherwise.
[[nodiscard]] Mask mask(const SchemeSpec& spec);
/// Degree-1 masks from the closed-form refinement rules.
[[nodiscard]] Mask closed_form_mask(Family family, int n);
/// Masks built from the exact least squares evaluation filters of each rule.
/// A rule whose node count does not exceed the degree uses the interpolant
/// of degree count-1 (for primal-even d = 2n-1 this is the identity rule).
[[nodiscard]] Mask filter_mask(const SchemeSpec& spec);

/// Builds a mask from exact coefficients, trimming nothing.
[[nodiscard]] Mask make_exact_mask(int first_index, std::vector<Rational> coeffs);

[[nodiscard]] Symbol symbol(const Mask& m);

/// Primal families: a(z) = a(1/z); dual families: z a(z) = a(1/z).
[[nodiscard]] bool check_symmetry(const Mask& m, const SchemeSpec& spec, double tol = 1e-12);

/// Common-denominator form: numerators and the (positive) denominator.
struct IntegerMask {
  int first_index = 0;
  std::vector<BigInt> numerators;
  BigInt denominator;
};
[[nodiscard]] std::optional<IntegerMask> integer_form(const Mask& m);
/// "[3,4,3,4,3,4,3]/12", or a decimal list when no exact form exists.
[[nodiscard]] std::string format_mask(const Mask& m);

} // namespace lsqsub
