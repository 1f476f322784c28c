#include <benchmark/benchmark.h>

#include "frailhaz/pvf.hpp"

using namespace frailhaz;

namespace {

PvfParams params_for(int family_id) {
  switch (family_id) {
    case 0: return PvfParams::from_variance(PvfFamily::gamma(), 1.0);
    case 1: return PvfParams::from_variance(PvfFamily::inverse_gaussian(), 1.0);
    case 2: return PvfParams::from_variance(PvfFamily::hougaard(-0.125), 1.0);
    default:
      return PvfParams::from_variance(PvfFamily::compound_poisson(0.10), 1.0);
  }
}

void BM_pvf_ln_laplace(benchmark::State& state) {
  const PvfParams params = params_for(static_cast<int>(state.range(0)));
  double c = 0.31;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ln_laplace(params, c));
    c = c < 10.0 ? c + 1e-9 : 0.31;  // defeat value caching
  }
}
BENCHMARK(BM_pvf_ln_laplace)->DenseRange(0, 3);

void BM_pvf_invert_survival(benchmark::State& state) {
  const PvfParams params = params_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(invert_survival(params, 0.56));
  }
}
BENCHMARK(BM_pvf_invert_survival)->DenseRange(0, 3);

void BM_pvf_trr(benchmark::State& state) {
  const PvfParams params = params_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(trr(params, 0.83));
  }
}
BENCHMARK(BM_pvf_trr)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
