#pragma once

#include "lsqsubdiv/laurent.hpp"

#include <span>
#include <vector>

namespace lsqsub {

/// Equispaced abscissae start + i*step, i = 0..count-1.
struct NodeSet {
  double start = 0.0;
  double step = 1.0;
  int count = 1;

  NodeSet() = default;
  NodeSet(double start, double step, int count);

  [[nodiscard]] double node(int i) const { return start + i * step; }
  [[nodiscard]] double center() const { return start + 0.5 * (count - 1) * step; }
  [[nodiscard]] std::vector<double> points() const;
};

/// Monomial coefficients, ascending degree.
struct PolyCoeffs {
  std::vector<double> coefficients;

  [[nodiscard]] int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

[[nodiscard]] double eval_poly(const PolyCoeffs& p, double x);

/// Orthonormal polynomials L_0..L_degree under the discrete inner product
/// over `nodes`, each with positive leading coefficient.
struct OrthoBasis {
  int degree = 0;
  std::vector<PolyCoeffs> polys;
  NodeSet nodes;

  [[nodiscard]] double value(int j, double x) const { return eval_poly(polys.at(j), x); }
};

/// Weights w_i with p*(x) = sum_i w_i y_i for the degree-d least squares fit.
struct EvalFilter {
  std::vector<double> weights;
  double point = 0.0;

  [[nodiscard]] double apply(std::span<const double> values) const;
};

/// Least squares polynomial of the given degree. When count <= degree the
/// minimal coefficient-norm interpolant (monomial basis) is returned.
[[nodiscard]] PolyCoeffs fit_least_squares(const NodeSet& nodes, std::span<const double> values,
                                           int degree);

[[nodiscard]] OrthoBasis ortho_polynomials(const NodeSet& nodes, int degree);

[[nodiscard]] EvalFilter evaluation_filter(const NodeSet& nodes, int degree, double x);

/// Exact filter on the integer nodes first, first+1, ..., first+count-1,
/// evaluated at a rational abscissa. For degree < count this is
/// sum_j P_j(x_i) P_j(x) / |P_j|^2 over the monic orthogonal family; otherwise
/// the minimal-norm monomial interpolant.
[[nodiscard]] std::vector<Rational> exact_evaluation_filter(int first, int count, int degree,
                                                            const Rational& x);

} // namespace lsqsub
