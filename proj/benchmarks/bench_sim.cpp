#include <benchmark/benchmark.h>

#include <vector>

#include "frailhaz/rng.hpp"
#include "frailhaz/sim.hpp"
#include "frailhaz/uncertainty.hpp"

using namespace frailhaz;

namespace {

ScenarioConfig bench_config(long n_per_arm) {
  ScenarioConfig cfg;
  cfg.n_per_arm = n_per_arm;
  cfg.n_twin_pairs = 1000;
  cfg.n_survey = 1000;
  cfg.h0 = 0.02;
  cfg.nu = 0.5;
  cfg.r_cau = 0.8;
  cfg.t1 = 30.0;
  cfg.delta = 5.0;
  cfg.seed = 9;
  return cfg;
}

void BM_generate_cohort_arm(benchmark::State& state) {
  const ScenarioConfig cfg = bench_config(state.range(0));
  std::uint64_t tag = 0;
  for (auto _ : state) {
    Rng rng = Rng::stream(cfg.seed, {kStreamCohortArm0, tag++});
    benchmark::DoNotOptimize(generate_cohort_arm(cfg, false, rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_generate_cohort_arm)->Arg(10000)->Arg(100000);

void BM_fit_cox_binary(benchmark::State& state) {
  const ScenarioConfig cfg = bench_config(state.range(0));
  Rng rng0 = Rng::stream(cfg.seed, {kStreamCohortArm0});
  Rng rng1 = Rng::stream(cfg.seed, {kStreamCohortArm1});
  std::vector<Individual> cohort = generate_cohort_arm(cfg, false, rng0);
  const std::vector<Individual> exposed = generate_cohort_arm(cfg, true, rng1);
  cohort.insert(cohort.end(), exposed.begin(), exposed.end());
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_cox_binary(cohort));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<long>(cohort.size()));
}
BENCHMARK(BM_fit_cox_binary)->Arg(10000)->Arg(100000);

void BM_numeric_ci(benchmark::State& state) {
  SummaryEstimate rmar;
  rmar.value = 0.68;
  rmar.lo = 0.54;
  rmar.hi = 0.87;
  rmar.scale = Scale::Log;
  SummaryEstimate trr_est;
  trr_est.value = 1.27;
  trr_est.lo = 1.20;
  trr_est.hi = 1.34;
  trr_est.scale = Scale::Log;
  SummaryEstimate s_est;
  s_est.value = 0.56;
  s_est.lo = 0.56;
  s_est.hi = 0.56;
  s_est.scale = Scale::Identity;
  CiConfig cfg;
  cfg.n_draws = static_cast<int>(state.range(0));
  cfg.seed = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        numeric_ci(PvfFamily::gamma(), rmar, trr_est, s_est, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_numeric_ci)->Arg(1000)->Arg(10000);

}  // namespace
