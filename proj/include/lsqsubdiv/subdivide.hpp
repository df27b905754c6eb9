#pragma once

#include "lsqsubdiv/kernels.hpp"
#include "lsqsubdiv/schemes.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <utility>
#include <vector>

namespace lsqsub {

/// Values f^k_i at the dyadic points 2^{-k} i, i = first_index + j.
struct SignalLevel {
  int level = 0;
  long first_index = 0;
  std::vector<double> values;

  [[nodiscard]] long last_index() const {
    return first_index + static_cast<long>(values.size()) - 1;
  }
  [[nodiscard]] double at(long i) const {
    if (i < first_index || i > last_index()) return 0.0;
    return values[static_cast<std::size_t>(i - first_index)];
  }
  [[nodiscard]] static SignalLevel delta() { return {0, 0, {1.0}}; }
};

/// Samples of a limit function at 2^{-resolution} (first_index + j) + offset.
/// offset is zero except for derivative samples, which sit at cell midpoints.
struct LimitSamples {
  int resolution = 0;
  long first_index = 0;
  std::vector<double> values;
  double offset = 0.0;

  [[nodiscard]] long last_index() const {
    return first_index + static_cast<long>(values.size()) - 1;
  }
  [[nodiscard]] double step() const { return std::ldexp(1.0, -resolution); }
  [[nodiscard]] double x(long i) const { return std::ldexp(static_cast<double>(i), -resolution) + offset; }
  [[nodiscard]] double at(long i) const {
    if (i < first_index || i > last_index()) return 0.0;
    return values[static_cast<std::size_t>(i - first_index)];
  }
  /// Grid index of x; x must be on the grid.
  [[nodiscard]] long index_of(double xv) const;
};

/// One application of f_i <- sum_j a_{i-2j} f_j. Data outside the window is
/// zero, and every index receiving a contribution is emitted.
[[nodiscard]] SignalLevel refine(const Mask& mask, const SignalLevel& signal,
                                 kernels::Exec exec = kernels::Exec::parallel);
[[nodiscard]] SignalLevel refine_many(const Mask& mask, SignalLevel signal, int steps,
                                      kernels::Exec exec = kernels::Exec::parallel);

/// Output indices of refine() whose contributions all come from inside the
/// input window. Empty (first > second) when the window is too short.
[[nodiscard]] std::pair<long, long> fully_supported_range(const Mask& mask, const SignalLevel& signal);

/// S^K delta on the 2^{-K} grid over the full support [lo, hi] of phi.
[[nodiscard]] LimitSamples basic_limit_function(const SchemeSpec& spec, int K);
[[nodiscard]] LimitSamples basic_limit_function(const Mask& mask, int K);

/// Transposed subdivision matrix M_{ij} = a_{2i-j} over the interior integers
/// of the support.
[[nodiscard]] Eigen::MatrixXd transposed_subdivision_matrix(const Mask& mask);
/// The (4n-3)x(4n-3) column stochastic band matrix with r = 1/(2n-1) in even
/// columns and s = 1/(2n) in odd columns.
[[nodiscard]] Eigen::MatrixXd two_slanted_matrix(int n);
/// (2n-1)x(2n-1) reduction of two_slanted_matrix using the symmetry of phi.
[[nodiscard]] Eigen::MatrixXd folded_two_slanted_matrix(int n);

/// phi at the interior integers from the eigenvalue-1 eigenvector, normalized
/// to sum 1. Throws NumericError unless that eigenspace is one-dimensional.
[[nodiscard]] SignalLevel integer_values_eigen(const SchemeSpec& spec);
[[nodiscard]] SignalLevel integer_values_eigen(const Eigen::MatrixXd& matrix, long first_index);

/// S^K f0 attached to the 2^{-K} grid.
[[nodiscard]] LimitSamples evaluate_limit(const Mask& mask, const SignalLevel& f0, int K,
                                          kernels::Exec exec = kernels::Exec::parallel);
/// sum_j f0_j phi(x - j) on phi's grid.
[[nodiscard]] LimitSamples translate_sum(const LimitSamples& phi, const SignalLevel& f0);
/// (S^K f0) at a single level-K index, refining only its dependency cone.
[[nodiscard]] double limit_value_at(const Mask& mask, const SignalLevel& f0, int K, long index);
/// Window of level-0 indices that (S^K f)_index depends on.
[[nodiscard]] std::pair<long, long> dependency_window(const Mask& mask, int K, long index);

/// Convolution of f0 with phi at the integers (primal_even only).
[[nodiscard]] SignalLevel limit_filter_at_integers(const SchemeSpec& spec, const SignalLevel& f0);

/// Limit of f0 on [a, b] at the 2^{-K} grid, exact up to rounding: K
/// refinements of f0, then convolution with phi's integer values. Only values
/// that do not depend on data outside f0's window are used; throws
/// std::invalid_argument if they do not cover [a, b]. Sample i sits at
/// 2^{-K} i in phi's coordinates, so dual limits lag the data by 1/2.
[[nodiscard]] LimitSamples limit_on_interval(const SchemeSpec& spec, const SignalLevel& f0, int K, long a, long b);

/// phi' from K steps of the scheme with symbol 2a(z)/(1+z) applied to the
/// forward difference of delta. Sample i equals 2^K (phi_i - phi_{i-1}) on
/// phi's grid and carries offset -2^{-K-1}, i.e. it sits at the midpoint of
/// [x_{i-1}, x_i]. Throws NumericError unless (1+z)^2 divides a.
[[nodiscard]] LimitSamples blf_derivative(const SchemeSpec& spec, int K);

} // namespace lsqsub
