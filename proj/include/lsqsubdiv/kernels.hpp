#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Data-parallel inner loops. Each kernel has a serial reference and an
// OpenMP version; both evaluate every output with the same summation order,
// so results are bitwise identical regardless of thread count.
namespace lsqsub::kernels {

enum class Exec { serial, parallel };

/// out_p = sum_q mask_{p - 2q} in_q, p = 0 .. 2(|in|-1) + |mask| - 1.
/// Index 0 of `out` corresponds to 2*in_first + mask_first.
void refine_serial(std::span<const double> mask, std::span<const double> in, std::span<double> out);
void refine_omp(std::span<const double> mask, std::span<const double> in, std::span<double> out);

/// Coefficients of p(z) * b(z^stride); |out| = |p| + (|b|-1)*stride.
void dilated_product_serial(std::span<const double> p, std::span<const double> b,
                            std::size_t stride, std::span<double> out);
void dilated_product_omp(std::span<const double> p, std::span<const double> b,
                         std::size_t stride, std::span<double> out);

/// max over residues r mod `modulus` of sum_{k = r mod modulus} |c_k|.
double residue_abs_max_serial(std::span<const double> c, std::size_t modulus);
double residue_abs_max_omp(std::span<const double> c, std::size_t modulus);

// Dispatchers used by the library.
[[nodiscard]] std::vector<double> refine(std::span<const double> mask, std::span<const double> in,
                                         Exec exec = Exec::parallel);
[[nodiscard]] std::vector<double> dilated_product(std::span<const double> p,
                                                  std::span<const double> b, std::size_t stride,
                                                  Exec exec = Exec::parallel);
[[nodiscard]] double residue_abs_max(std::span<const double> c, std::size_t modulus,
                                     Exec exec = Exec::parallel);

/// Output length of refine().
[[nodiscard]] constexpr std::size_t refined_size(std::size_t mask_size, std::size_t in_size) {
  return in_size == 0 || mask_size == 0 ? 0 : 2 * (in_size - 1) + mask_size;
}

} // namespace lsqsub::kernels
