// Serial reference kernels against their OpenMP twins, and the exact NTT
// convolution against the quadratic one.

#include <benchmark/benchmark.h>

#include <random>

#include "fcl/factorial.hpp"
#include "fcl/kernels.hpp"
#include "fcl/transform.hpp"

namespace {

using namespace fcl;

ExactVector random_counts(std::size_t n, u64 seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> d(0, 1000);
  ExactVector v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

template <auto Kernel>
void BM_Convolve(benchmark::State& state) {
  const auto a = random_counts(state.range(0), 1), b = random_counts(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, b));
}
BENCHMARK(BM_Convolve<kernels::convolve_direct_serial>)->Name("convolve_direct/serial")->Arg(1009)->Arg(4099);
BENCHMARK(BM_Convolve<kernels::convolve_direct_parallel>)->Name("convolve_direct/parallel")->Arg(1009)->Arg(4099);
BENCHMARK(BM_Convolve<cyclic_convolve_modular>)->Name("convolve_ntt")->Arg(1009)->Arg(4099)->Arg(100003);

template <auto Kernel>
void BM_Spectrum(benchmark::State& state) {
  const u64 n = state.range(0);
  const auto w = random_counts(n, 3);
  const auto roots = kernels::unit_roots(n);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(w, roots));
}
BENCHMARK(BM_Spectrum<kernels::spectrum_direct_serial>)->Name("spectrum_direct/serial")->Arg(1009)->Arg(4099);
BENCHMARK(BM_Spectrum<kernels::spectrum_direct_parallel>)->Name("spectrum_direct/parallel")->Arg(1009)->Arg(4099);

void BM_SpectrumFft(benchmark::State& state) {
  const u64 n = state.range(0);
  const auto w = random_counts(n, 3);
  std::vector<Complex> x(w.begin(), w.end());
  for (auto _ : state) benchmark::DoNotOptimize(dft(x, -1));
}
BENCHMARK(BM_SpectrumFft)->Name("spectrum_fft")->Arg(1009)->Arg(4099)->Arg(100003);

template <auto Kernel>
void BM_TallyProducts(benchmark::State& state) {
  const u64 p = state.range(0);
  const auto w = FactorialWindow::build(PrimeContext::make(p), 0, p - 1);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(w.values(), w.values(), p));
}
BENCHMARK(BM_TallyProducts<kernels::tally_products_serial>)->Name("tally_products/serial")->Arg(1009)->Arg(4099);
BENCHMARK(BM_TallyProducts<kernels::tally_products_parallel>)->Name("tally_products/parallel")->Arg(1009)->Arg(4099);

template <auto Kernel>
void BM_TallyChain(benchmark::State& state) {
  const u64 p = state.range(0);
  const auto w = FactorialWindow::build(PrimeContext::make(p), 0, p - 1);
  const std::vector<u64> values(w.values().begin(), w.values().end());
  const std::vector<std::vector<u64>> stages(3, values);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(stages, kernels::ChainOp::add, p));
}
BENCHMARK(BM_TallyChain<kernels::tally_chain_serial>)->Name("tally_chain/serial")->Arg(101)->Arg(211);
BENCHMARK(BM_TallyChain<kernels::tally_chain_parallel>)->Name("tally_chain/parallel")->Arg(101)->Arg(211);

}  // namespace

BENCHMARK_MAIN();
