#pragma once

#include "lsqsubdiv/kernels.hpp"
#include "lsqsubdiv/schemes.hpp"
#include "lsqsubdiv/subdivide.hpp"

namespace lsqsub {

/// Hoelder regularity lower bound nu = m - log2(|S_b^L|_inf) / L with
/// b(z) = 2^m a(z) / (1+z)^m and m the multiplicity of the factor (1+z).
struct RegularityReport {
  int smoothness_factor_multiplicity = 0;
  int iterations = 0;
  double iterated_norm = 0.0;
  double lower_bound = 0.0;
};

/// a(1) = 2 and a(-1) = 0.
[[nodiscard]] bool necessary_conditions(const Symbol& s, double tol = 1e-12);

/// s(z) / (1+z)^power. Exact when s carries rationals; on floats the
/// remainder must not exceed 1e-12 relative to the coefficient scale.
/// Throws NumericError on a nonzero remainder.
[[nodiscard]] Symbol divide_out(const Symbol& s, int power);

[[nodiscard]] int multiplicity_at_minus_one(const Symbol& s);

/// Multiplies every coefficient (and the exact form, if any).
[[nodiscard]] Symbol scaled(const Symbol& s, const Rational& factor);

/// max over the two parity classes of the sum of absolute coefficients.
[[nodiscard]] double scheme_norm(const Symbol& s);

/// |S_s^L|_inf from the product s(z) s(z^2) ... s(z^{2^{L-1}}). Rejects
/// L < 1 and L > 24.
[[nodiscard]] double iterated_norm(const Symbol& s, int L,
                                   kernels::Exec exec = kernels::Exec::parallel);

[[nodiscard]] RegularityReport holder_lower_bound(const Mask& mask, int L,
                                                  kernels::Exec exec = kernels::Exec::parallel);

/// (Delta f)_i = f_{i+1} - f_i over the window; the result is one shorter.
[[nodiscard]] SignalLevel forward_difference(const SignalLevel& signal);

} // namespace lsqsub
