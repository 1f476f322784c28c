#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "frailhaz/rng.hpp"
#include "frailhaz/uncertainty.hpp"

namespace frailhaz {

// Simulation-based validation engine: frailty-heterogeneous cohorts, left
// truncation at t1, administrative censoring at t1 + delta, Cox fitting for a
// binary exposure, twin/survey summary estimators, and coverage studies of
// the full adjustment pipeline.

struct Individual {
  double frailty = 1.0;       // U
  bool exposed = false;       // X
  double event_time = 0.0;    // T, from time origin (birth)
  double entry = 0.0;         // t1; only subjects with T > t1 are retained
  double observed_time = 0.0; // min(T - t1, delta), time on study
  bool event = false;         // T - t1 < delta
};

struct ScenarioConfig {
  long n_per_arm = 0;      // cohort size per exposure arm (before truncation)
  long n_twin_pairs = 0;   // monozygotic pairs sharing one frailty
  long n_survey = 0;       // independent survival-survey sample
  double h0 = 0.0;         // constant baseline hazard rate per year
  double nu = 0.0;         // gamma frailty parameter, Var(U) = 1/nu
  double r_cau = 0.0;      // true causal hazard ratio of the exposure
  double t1 = 0.0;         // study entry age (left-truncation point), years
  double delta = 1.0;      // follow-up duration, years
  std::uint64_t seed = 0;

  void validate() const;
};

struct CoxFit {
  double log_hr = 0.0;
  double se = 0.0;
  double hr = 0.0;  // exp(log_hr)
  double lo = 0.0;  // exp(log_hr - 1.96 se)
  double hi = 0.0;  // exp(log_hr + 1.96 se)
};

// One twin pair's survival status at t1.  The generator designates the index
// twin uniformly at random per pair (the estimator itself is deterministic:
// first = index, second = co-twin).
struct TwinPair {
  bool index_survived = false;
  bool cotwin_survived = false;
};

struct ScenarioResult {
  CoxFit cox;                    // marginal HR estimate from the cohort
  double adjusted = 0.0;         // causal HR point estimate
  double adj_lo = 0.0;
  double adj_hi = 0.0;
  SummaryEstimate trr_hat;       // from the twin sample
  SummaryEstimate s_hat;         // from the survey sample
  int n_failed_draws = 0;        // numeric-CI draws rejected
};

struct CoverageReport {
  int n_reps = 0;                   // successful replications
  double median_r_mar = 0.0;        // median marginal HR estimate
  double median_r_adjusted = 0.0;   // median adjusted (causal) HR estimate
  double coverage_marginal = 0.0;   // fraction of marginal CIs containing r_cau
  double coverage_adjusted = 0.0;   // fraction of adjusted CIs containing r_cau
  int n_failed_reps = 0;
  std::map<std::string, int> failure_kinds;
};

// Gamma frailty draws with mean 1 and variance 1/nu (shape nu, scale 1/nu).
std::vector<double> sample_frailty_gamma(double nu, long n, Rng& rng);

// Event time with constant baseline hazard h0, frailty u and HR multiplier r:
// inverse-CDF of the exponential, T = -ln(W) / (h0 u r), W ~ Uniform(0,1].
double sample_event_time(double u, double h0, double r, Rng& rng);

// One exposure arm: n_per_arm subjects with fresh frailties; subjects with
// T <= t1 are left-truncated (dropped); survivors are followed for delta
// years with administrative censoring at exactly delta.
std::vector<Individual> generate_cohort_arm(const ScenarioConfig& cfg,
                                            bool exposed, Rng& rng);

// Twin pairs share one frailty; both twins carry unexposed (baseline) rates.
// Status is survival to t1.  Index designation is randomized per pair.
std::vector<TwinPair> generate_twin_pairs(const ScenarioConfig& cfg, Rng& rng);

// Independent unexposed sample; true/false = survived to t1.
std::vector<bool> generate_survey(const ScenarioConfig& cfg, Rng& rng);

// Cox partial likelihood for a single binary covariate, Breslow ties, Newton
// iteration from 0 on the log HR; converged when |score| < 1e-10 (with a
// small implied step, which rules out quasi-separated paths whose score
// vanishes while the walk keeps moving) or |step| < 1e-12; se from inverse
// observed information; CI multiplier 1.96.
// Errors: NoEvents; Separation (all events in one arm); NonConvergence (50
// iterations exhausted, |log_hr| escaping 30 — a diverging, quasi-separated
// fit — or non-positive observed information).
CoxFit fit_cox_binary(const std::vector<Individual>& sample);

// Twin recurrence risk estimator:
//   TRR = P(co-twin survived | index survived) / P(co-twin survived)
//       = (a/n1) / (b/n2),
// a = pairs with both surviving, n1 = pairs with index surviving, b = pairs
// with co-twin surviving, n2 = all pairs.  Wald log-scale CI with
// se = sqrt(1/a - 1/n1 + 1/b - 1/n2).  Degenerate if no index twin survived.
SummaryEstimate estimate_trr(const std::vector<TwinPair>& pairs);

// Survival proportion with identity-scale Wald CI (clamped to [0,1]);
// requires n >= 30.
SummaryEstimate estimate_survival(const std::vector<bool>& survived);

// One full replication: three independent samples (cohort for the Cox fit,
// twins for TRR, survey for S), then numeric_ci under the Gamma family with
// default draws (10000, alpha 0.05) on a substream of cfg.seed.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

// Repeats run_scenario n_reps times (n_reps >= 100) with per-rep seeds
// derived from cfg.seed; reports medians of the per-rep estimates and the
// fraction of 95% CIs containing r_cau.  Failed reps are tallied by kind;
// more than 5% failures throws TooManyFailures (with the tallies in the
// message).
CoverageReport coverage_study(const ScenarioConfig& cfg, int n_reps);

}  // namespace frailhaz
