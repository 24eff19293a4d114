#include <benchmark/benchmark.h>

#include "lue/chebyshev.hpp"
#include "lue/kernel.hpp"
#include "lue/limitvar.hpp"
#include "lue/quadrature.hpp"
#include "lue/sampler.hpp"
#include "lue/specfun.hpp"

namespace {

void BM_PsiRecurrence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double x = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lue::eval_psi({n, 2}, x));
    x += 1e-9;
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_PsiRecurrence)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oN);

void BM_GaussLegendre(benchmark::State& state) {
  const int points = static_cast<int>(state.range(0));
  double b = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lue::gauss_legendre(points, 0.0, b).nodes.data());
    b += 1e-12;
  }
}
BENCHMARK(BM_GaussLegendre)->RangeMultiplier(4)->Range(16, 1024);

void BM_LssVariance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lue::TestFunction f = lue::TestFunction::power(2);
  for (auto _ : state) {
    const lue::KernelContext ctx({n, 0});
    benchmark::DoNotOptimize(lue::lss_variance(ctx, f).finite_n_variance);
  }
}
BENCHMARK(BM_LssVariance)->Arg(25)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_VLue(benchmark::State& state) {
  const lue::TestFunction f = lue::TestFunction::abs_shift();
  for (auto _ : state) benchmark::DoNotOptimize(lue::v_lue(f));
}
BENCHMARK(BM_VLue)->Unit(benchmark::kMillisecond);

void BM_ChebyshevExpand(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const lue::TestFunction f = lue::TestFunction::abs(0.0);
  for (auto _ : state) benchmark::DoNotOptimize(lue::expand(f, N).coefficients.data());
}
BENCHMARK(BM_ChebyshevExpand)->RangeMultiplier(8)->Range(64, 4096);

void BM_SampleSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(lue::sample_spectrum(n, 0, seed++).eigenvalues.data());
}
BENCHMARK(BM_SampleSpectrum)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
