#include "lsqsubdiv/kernels.hpp"

#include "kernel_inner.hpp"

namespace lsqsub::kernels {

void refine_serial(std::span<const double> mask, std::span<const double> in, std::span<double> out) {
  inner::check_refine(mask, in, out);
  for (std::size_t p = 0; p < out.size(); ++p)
    out[p] = inner::refine_at(mask, in, static_cast<std::ptrdiff_t>(p));
}

void dilated_product_serial(std::span<const double> p, std::span<const double> b,
                            std::size_t stride, std::span<double> out) {
  inner::check_product(p, b, stride, out);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = inner::product_at(p, b, stride, k);
}

double residue_abs_max_serial(std::span<const double> c, std::size_t modulus) {
  if (modulus == 0) throw std::invalid_argument("residue_abs_max: modulus must be positive");
  double best = 0.0;
  for (std::size_t r = 0; r < modulus && r < c.size(); ++r)
    best = std::max(best, inner::residue_sum(c, modulus, r));
  return best;
}

std::vector<double> refine(std::span<const double> mask, std::span<const double> in, Exec exec) {
  std::vector<double> out(refined_size(mask.size(), in.size()));
  if (exec == Exec::parallel)
    refine_omp(mask, in, out);
  else
    refine_serial(mask, in, out);
  return out;
}

std::vector<double> dilated_product(std::span<const double> p, std::span<const double> b,
                                    std::size_t stride, Exec exec) {
  if (p.empty() || b.empty() || stride == 0)
    throw std::invalid_argument("dilated_product: empty operand or zero stride");
  std::vector<double> out(p.size() + (b.size() - 1) * stride);
  if (exec == Exec::parallel)
    dilated_product_omp(p, b, stride, out);
  else
    dilated_product_serial(p, b, stride, out);
  return out;
}

double residue_abs_max(std::span<const double> c, std::size_t modulus, Exec exec) {
  return exec == Exec::parallel ? residue_abs_max_omp(c, modulus) : residue_abs_max_serial(c, modulus);
}

} // namespace lsqsub::kernels
