#include "lsqsubdiv/kernels.hpp"

#include "kernel_inner.hpp"

#include <omp.h>

namespace lsqsub::kernels {

namespace {
// Below this many outputs the thread start-up dominates.
constexpr std::ptrdiff_t kMinParallel = 1 << 14;
} // namespace

void refine_omp(std::span<const double> mask, std::span<const double> in, std::span<double> out) {
  inner::check_refine(mask, in, out);
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::ptrdiff_t p = 0; p < n; ++p) out[p] = inner::refine_at(mask, in, p);
}

void dilated_product_omp(std::span<const double> p, std::span<const double> b,
                         std::size_t stride, std::span<double> out) {
  inner::check_product(p, b, stride, out);
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::ptrdiff_t k = 0; k < n; ++k)
    out[k] = inner::product_at(p, b, stride, static_cast<std::size_t>(k));
}

double residue_abs_max_omp(std::span<const double> c, std::size_t modulus) {
  if (modulus == 0) throw std::invalid_argument("residue_abs_max: modulus must be positive");
  const auto classes = static_cast<std::ptrdiff_t>(std::min(modulus, c.size()));
  double best = 0.0;
#pragma omp parallel for schedule(static) reduction(max : best) if (classes >= 256)
  for (std::ptrdiff_t r = 0; r < classes; ++r)
    best = std::max(best, inner::residue_sum(c, modulus, static_cast<std::size_t>(r)));
  return best;
}

} // namespace lsqsub::kernels
