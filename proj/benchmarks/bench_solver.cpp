#include <benchmark/benchmark.h>

#include "frailhaz/adjust.hpp"
#include "frailhaz/solver.hpp"
#include "frailhaz/uncertainty.hpp"

using namespace frailhaz;

namespace {

PvfFamily family_for(int family_id) {
  switch (family_id) {
    case 0: return PvfFamily::gamma();
    case 1: return PvfFamily::inverse_gaussian();
    case 2: return PvfFamily::hougaard(-0.125);
    default: return PvfFamily::compound_poisson(0.10);
  }
}

void BM_solve_nu(benchmark::State& state) {
  const PvfFamily family = family_for(static_cast<int>(state.range(0)));
  FrailtySummary summary;
  summary.trr_t1 = 1.27;
  summary.s_t1 = 0.56;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_nu(family, summary));
  }
}
BENCHMARK(BM_solve_nu)->DenseRange(0, 3);

void BM_causal_from_marginal(benchmark::State& state) {
  const PvfFamily family = family_for(static_cast<int>(state.range(0)));
  FrailtySummary summary;
  summary.trr_t1 = 1.27;
  summary.s_t1 = 0.56;
  const PvfParams params = solve_nu(family, summary);
  const double h0 = invert_survival(params, 0.56);
  for (auto _ : state) {
    benchmark::DoNotOptimize(causal_from_marginal(params, h0, 0.68));
  }
}
BENCHMARK(BM_causal_from_marginal)->DenseRange(0, 3);

void BM_plugin_ci(benchmark::State& state) {
  const PvfFamily family = family_for(static_cast<int>(state.range(0)));
  SummaryEstimate rmar;
  rmar.value = 0.68;
  rmar.lo = 0.54;
  rmar.hi = 0.87;
  rmar.scale = Scale::Log;
  for (auto _ : state) {
    benchmark::DoNotOptimize(plugin_ci(family, rmar, 1.27, 0.56));
  }
}
BENCHMARK(BM_plugin_ci)->DenseRange(0, 3);

}  // namespace
