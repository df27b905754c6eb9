// Serial reference vs OpenMP kernels, plus the end-to-end regularity bound.

#include "lsqsubdiv/analysis.hpp"
#include "lsqsubdiv/kernels.hpp"
#include "lsqsubdiv/schemes.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace lsqsub;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(gen);
  return v;
}

template <kernels::Exec E>
void BM_Refine(benchmark::State& state) {
  const auto mask = lsqsub::mask(SchemeSpec{Family::primal_even, 5, 1}).coefficients;
  const auto in = random_vector(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::refine(mask, in, E));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <kernels::Exec E>
void BM_DilatedProduct(benchmark::State& state) {
  const auto p = random_vector(static_cast<std::size_t>(state.range(0)), 2);
  const auto b = random_vector(19, 3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::dilated_product(p, b, 1 << 12, E));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <kernels::Exec E>
void BM_ResidueAbsMax(benchmark::State& state) {
  const auto c = random_vector(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::residue_abs_max(c, 1 << 16, E));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <kernels::Exec E>
void BM_HolderBound(benchmark::State& state) {
  const Mask m = mask(SchemeSpec{Family::dual_even, static_cast<int>(state.range(0)), 1});
  for (auto _ : state) benchmark::DoNotOptimize(holder_lower_bound(m, 16, E));
}

} // namespace

BENCHMARK(BM_Refine<kernels::Exec::serial>)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_Refine<kernels::Exec::parallel>)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_DilatedProduct<kernels::Exec::serial>)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_DilatedProduct<kernels::Exec::parallel>)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_ResidueAbsMax<kernels::Exec::serial>)->RangeMultiplier(8)->Range(1 << 18, 1 << 24);
BENCHMARK(BM_ResidueAbsMax<kernels::Exec::parallel>)->RangeMultiplier(8)->Range(1 << 18, 1 << 24);
BENCHMARK(BM_HolderBound<kernels::Exec::serial>)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HolderBound<kernels::Exec::parallel>)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
