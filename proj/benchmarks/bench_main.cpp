#include <benchmark/benchmark.h>

#include "tspec/asymptotics.hpp"
#include "tspec/deviation.hpp"
#include "tspec/eig.hpp"
#include "tspec/toeplitz.hpp"

using namespace tspec;

namespace {

const PureJump kSymbol{{0.8, 1.0 / 3.0}, 0.0};

void BM_Eigenvalues(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int k = static_cast<int>(n) - 1;
  const auto t = build(fourier_coeffs(kSymbol, -k, k), n);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(t.entries));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Eigenvalues)->RangeMultiplier(2)->Range(50, 400)->Unit(benchmark::kMillisecond)->Complexity();

void BM_LogDet(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int k = static_cast<int>(n) - 1;
  const auto t = shifted(build(fourier_coeffs(kSymbol, -k, k), n), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(log_det(t));
}
BENCHMARK(BM_LogDet)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_Omega(benchmark::State& state) {
  const double theta = 0.7;
  for (auto _ : state) benchmark::DoNotOptimize(omega(f_continuous(kSymbol, theta)));
}
BENCHMARK(BM_Omega)->Unit(benchmark::kMillisecond);

void BM_FisherHartwig(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fh_logdet_prediction(kSymbol, 2.0, 256));
}
BENCHMARK(BM_FisherHartwig)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
