#pragma once

// Per-output inner loops shared by the serial and OpenMP kernels.

#include "lsqsubdiv/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lsqsub::kernels::inner {

inline double refine_at(std::span<const double> mask, std::span<const double> in, std::ptrdiff_t p) {
  const auto ms = static_cast<std::ptrdiff_t>(mask.size());
  const auto ns = static_cast<std::ptrdiff_t>(in.size());
  const std::ptrdiff_t q_lo = std::max<std::ptrdiff_t>(0, (p - ms + 2) / 2);
  const std::ptrdiff_t q_hi = std::min<std::ptrdiff_t>(ns - 1, p / 2);
  double s = 0.0;
  for (std::ptrdiff_t q = q_lo; q <= q_hi; ++q) s += mask[p - 2 * q] * in[q];
  return s;
}

// sum_t b_t p_{k - t*stride}
inline double product_at(std::span<const double> p, std::span<const double> b, std::size_t stride,
                         std::size_t k) {
  double s = 0.0;
  for (std::size_t t = 0; t < b.size(); ++t) {
    const std::size_t shift = t * stride;
    if (shift > k) break;
    const std::size_t idx = k - shift;
    if (idx < p.size()) s += b[t] * p[idx];
  }
  return s;
}

inline double residue_sum(std::span<const double> c, std::size_t modulus, std::size_t r) {
  double s = 0.0;
  for (std::size_t k = r; k < c.size(); k += modulus) s += std::abs(c[k]);
  return s;
}

inline void check_refine(std::span<const double> mask, std::span<const double> in,
                         std::span<double> out) {
  if (out.size() != refined_size(mask.size(), in.size()))
    throw std::invalid_argument("refine kernel: output size mismatch");
}

inline void check_product(std::span<const double> p, std::span<const double> b, std::size_t stride,
                          std::span<double> out) {
  if (p.empty() || b.empty() || stride == 0)
    throw std::invalid_argument("dilated_product kernel: empty operand or zero stride");
  if (out.size() != p.size() + (b.size() - 1) * stride)
    throw std::invalid_argument("dilated_product kernel: output size mismatch");
}

} // namespace lsqsub::kernels::inner
