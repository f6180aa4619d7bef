// Serial reference kernels against their OpenMP counterparts, plus the phi
// kernel end to end.

#include <benchmark/benchmark.h>

#include <vector>

#include "philyap/gallery.hpp"
#include "philyap/kernels.hpp"
#include "philyap/phi.hpp"

namespace {

using namespace philyap;

std::vector<double> operand(std::size_t n, std::uint64_t seed) {
  const DenseMatrix m = gallery::random_uniform(n, n, seed);
  return {m.data().begin(), m.data().end()};
}

template <auto Kernel>
void BM_gemm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = operand(n, 1);
  const auto b = operand(n, 2);
  std::vector<double> c(n * n);
  for (auto _ : state) {
    Kernel(n, n, n, a, b, c);
    benchmark::DoNotOptimize(c.data());
  }
  state.counters["GFlops"] =
      benchmark::Counter(2.0 * static_cast<double>(n * n * n), benchmark::Counter::kIsIterationInvariantRate,
                         benchmark::Counter::kIs1000);
}

template <auto Kernel>
void BM_gemm_nt_symmetric(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = operand(n, 3);
  std::vector<double> c(n * n);
  for (auto _ : state) {
    Kernel(n, n, a, a, c);
    benchmark::DoNotOptimize(c.data());
  }
}

void BM_phi_lyap(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int l = static_cast<int>(state.range(1));
  const DenseMatrix a = gallery::laplacian_1d(n, 2500.0);
  const DenseMatrix q = gallery::random_symmetric(n, 42);
  for (auto _ : state) {
    PhiResult r = phi_lyap(a, q, l);
    benchmark::DoNotOptimize(r.values.data());
  }
}

}  // namespace

BENCHMARK(BM_gemm<kernels::gemm_serial>)->Name("gemm/serial")->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_gemm<kernels::gemm>)->Name("gemm/openmp")->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_gemm_nt_symmetric<kernels::gemm_nt_symmetric_serial>)->Name("syrk/serial")->Arg(128)->Arg(256);
BENCHMARK(BM_gemm_nt_symmetric<kernels::gemm_nt_symmetric>)->Name("syrk/openmp")->Arg(128)->Arg(256);
BENCHMARK(BM_phi_lyap)->Args({100, 1})->Args({100, 8})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
