#include "frailhaz/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frailhaz/errors.hpp"
#include "frailhaz/parallel.hpp"
#include "stats_util.hpp"

namespace frailhaz {

void ScenarioConfig::validate() const {
  require(n_per_arm > 0, ErrorKind::Validation, "n_per_arm must be positive");
  require(n_twin_pairs > 0, ErrorKind::Validation,
          "n_twin_pairs must be positive");
  require(n_survey > 0, ErrorKind::Validation, "n_survey must be positive");
  require(std::isfinite(h0) && h0 > 0.0, ErrorKind::Validation,
          "h0 must be a positive rate");
  require(std::isfinite(nu) && nu > 0.0, ErrorKind::Validation,
          "nu must be positive and finite");
  require(std::isfinite(r_cau) && r_cau > 0.0, ErrorKind::Validation,
          "r_cau must be positive");
  require(std::isfinite(t1) && t1 > 0.0, ErrorKind::Validation,
          "t1 must be positive");
  require(std::isfinite(delta) && delta > 0.0, ErrorKind::Validation,
          "delta must be positive");
}

std::vector<double> sample_frailty_gamma(double nu, long n, Rng& rng) {
  require(nu > 0.0, ErrorKind::Validation, "nu must be positive");
  require(n >= 0, ErrorKind::Validation, "sample size must be non-negative");
  std::vector<double> out(static_cast<std::size_t>(n));
  if (std::isinf(nu)) {
    // Vanishing variance: the frailty distribution collapses to 1.
    std::fill(out.begin(), out.end(), 1.0);
    return out;
  }
  for (double& u : out) u = rng.gamma(nu, 1.0 / nu);
  return out;
}

double sample_event_time(double u, double h0, double r, Rng& rng) {
  require(u > 0.0 && h0 > 0.0 && r > 0.0, ErrorKind::Validation,
          "sample_event_time requires positive u, h0, r");
  // -ln W can be exactly 0 (W = 1 is reachable); event times must be
  // strictly positive, so redraw that measure-zero-in-theory case.
  double e = rng.exponential();
  while (e == 0.0) e = rng.exponential();
  return e / (h0 * u * r);
}

std::vector<Individual> generate_cohort_arm(const ScenarioConfig& cfg,
                                            bool exposed, Rng& rng) {
  cfg.validate();
  const double r = exposed ? cfg.r_cau : 1.0;
  std::vector<Individual> arm;
  arm.reserve(static_cast<std::size_t>(cfg.n_per_arm));
  for (long i = 0; i < cfg.n_per_arm; ++i) {
    const double u = rng.gamma(cfg.nu, 1.0 / cfg.nu);
    const double t = sample_event_time(u, cfg.h0, r, rng);
    if (t <= cfg.t1) continue;  // left truncation: died before study entry
    Individual ind;
    ind.frailty = u;
    ind.exposed = exposed;
    ind.event_time = t;
    ind.entry = cfg.t1;
    const double residual = t - cfg.t1;
    ind.event = residual < cfg.delta;
    ind.observed_time = ind.event ? residual : cfg.delta;
    arm.push_back(ind);
  }
  return arm;
}

std::vector<TwinPair> generate_twin_pairs(const ScenarioConfig& cfg, Rng& rng) {
  cfg.validate();
  std::vector<TwinPair> pairs(static_cast<std::size_t>(cfg.n_twin_pairs));
  for (TwinPair& pair : pairs) {
    const double u = rng.gamma(cfg.nu, 1.0 / cfg.nu);  // shared frailty
    const bool first = sample_event_time(u, cfg.h0, 1.0, rng) > cfg.t1;
    const bool second = sample_event_time(u, cfg.h0, 1.0, rng) > cfg.t1;
    // Designate the index twin uniformly at random; the estimator then reads
    // the pair as (index, co-twin) deterministically.
    if (rng.uniform01() <= 0.5) {
      pair.index_survived = first;
      pair.cotwin_survived = second;
    } else {
      pair.index_survived = second;
      pair.cotwin_survived = first;
    }
  }
  return pairs;
}

std::vector<bool> generate_survey(const ScenarioConfig& cfg, Rng& rng) {
  cfg.validate();
  std::vector<bool> survived(static_cast<std::size_t>(cfg.n_survey));
  for (long i = 0; i < cfg.n_survey; ++i) {
    const double u = rng.gamma(cfg.nu, 1.0 / cfg.nu);
    survived[static_cast<std::size_t>(i)] =
        sample_event_time(u, cfg.h0, 1.0, rng) > cfg.t1;
  }
  return survived;
}

namespace {

// Events grouped by unique time, with at-risk counts per arm at that time.
// Grouping makes each Newton pass O(#unique event times) instead of
// O(#subjects), which is what keeps million-subject fits fast.
struct EventGroup {
  double time = 0.0;
  double d = 0.0;    // events at this time (both arms)
  double d1 = 0.0;   // events in the exposed arm
  double n0 = 0.0;   // unexposed at risk (observed_time >= time)
  double n1 = 0.0;   // exposed at risk
};

struct ScoreInfo {
  double score = 0.0;
  double info = 0.0;
};

ScoreInfo cox_score_info(const std::vector<EventGroup>& groups, double beta) {
  ScoreInfo si;
  const double e = std::exp(beta);
  for (const EventGroup& g : groups) {
    const double denom = g.n0 + g.n1 * e;
    const double mu = g.n1 * e / denom;  // expected exposure share at risk
    si.score += g.d1 - g.d * mu;
    si.info += g.d * mu * (g.n0 / denom);
  }
  return si;
}

}  // namespace

CoxFit fit_cox_binary(const std::vector<Individual>& sample) {
  require(!sample.empty(), ErrorKind::Validation, "sample must be non-empty");

  // Split into events and censored, validating times on the way.
  std::vector<std::pair<double, bool>> events;  // (time, exposed)
  std::vector<double> censored0;
  std::vector<double> censored1;
  for (const Individual& ind : sample) {
    require(std::isfinite(ind.observed_time) && ind.observed_time > 0.0,
            ErrorKind::Validation, "observed_time must be positive and finite");
    if (ind.event) {
      events.emplace_back(ind.observed_time, ind.exposed);
    } else if (ind.exposed) {
      censored1.push_back(ind.observed_time);
    } else {
      censored0.push_back(ind.observed_time);
    }
  }

  if (events.empty()) throw_error(ErrorKind::NoEvents, "no events in sample");
  const auto d1_total = static_cast<long>(
      std::count_if(events.begin(), events.end(),
                    [](const auto& e) { return e.second; }));
  if (d1_total == 0 || d1_total == static_cast<long>(events.size())) {
    throw_error(ErrorKind::Separation,
                "all events fall in one exposure arm; the partial-likelihood "
                "maximum is not finite");
  }

  std::sort(events.begin(), events.end());

  // Administrative censoring makes every censored time identical, in which
  // case the censored arrays need no sorting: every censored subject is at
  // risk at each (strictly smaller) event time.
  auto all_equal = [](const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(),
                              [](double a, double b) { return a != b; }) ==
           v.end();
  };
  const bool flat0 = all_equal(censored0);
  const bool flat1 = all_equal(censored1);
  if (!flat0) std::sort(censored0.begin(), censored0.end());
  if (!flat1) std::sort(censored1.begin(), censored1.end());
  auto censored_at_risk = [](const std::vector<double>& v, bool flat,
                             double time) -> double {
    if (v.empty()) return 0.0;
    if (flat) return v.front() >= time ? static_cast<double>(v.size()) : 0.0;
    const auto it = std::lower_bound(v.begin(), v.end(), time);
    return static_cast<double>(v.end() - it);
  };

  // Group tied event times; then accumulate event at-risk counts as suffix
  // sums (a subject is at risk at its own event time).
  std::vector<EventGroup> groups;
  groups.reserve(events.size());
  for (std::size_t i = 0; i < events.size();) {
    EventGroup g;
    g.time = events[i].first;
    while (i < events.size() && events[i].first == g.time) {
      g.d += 1.0;
      if (events[i].second) g.d1 += 1.0;
      ++i;
    }
    groups.push_back(g);
  }
  double cum0 = 0.0;
  double cum1 = 0.0;
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    cum0 += it->d - it->d1;
    cum1 += it->d1;
    it->n0 = cum0 + censored_at_risk(censored0, flat0, it->time);
    it->n1 = cum1 + censored_at_risk(censored1, flat1, it->time);
  }

  // Newton iteration on the log hazard ratio, started at 0.
  constexpr double kTolScore = 1e-10;
  constexpr double kTolStep = 1e-12;
  // A vanishing score certifies an interior optimum only when the implied
  // Newton step is small too: in quasi-separated samples the score decays
  // exponentially along a diverging path while the step stays O(1), and the
  // walk must be allowed to continue until the escape guard fires.
  constexpr double kTolScoreStep = 1e-6;
  constexpr double kBetaEscape = 30.0;
  constexpr int kMaxIter = 50;
  double beta = 0.0;
  bool converged = false;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    const ScoreInfo si = cox_score_info(groups, beta);
    if (!(si.info > 0.0)) {
      throw_error(ErrorKind::NonConvergence,
                  "observed information is not positive; the exposure effect "
                  "is not identified in this sample");
    }
    const double step = si.score / si.info;
    if (std::abs(si.score) < kTolScore && std::abs(step) < kTolScoreStep) {
      converged = true;
      break;
    }
    beta += step;
    if (std::abs(beta) > kBetaEscape) {
      throw_error(ErrorKind::NonConvergence,
                  "log hazard ratio diverged beyond +/-30; the sample is "
                  "quasi-separated");
    }
    if (std::abs(step) < kTolStep) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw_error(ErrorKind::NonConvergence,
                "Newton iteration did not converge in 50 steps");
  }

  const ScoreInfo at_optimum = cox_score_info(groups, beta);
  require(at_optimum.info > 0.0, ErrorKind::NonConvergence,
          "observed information is not positive at the optimum");
  CoxFit fit;
  fit.log_hr = beta;
  fit.se = 1.0 / std::sqrt(at_optimum.info);
  fit.hr = std::exp(beta);
  fit.lo = std::exp(beta - 1.96 * fit.se);
  fit.hi = std::exp(beta + 1.96 * fit.se);
  return fit;
}

SummaryEstimate estimate_trr(const std::vector<TwinPair>& pairs) {
  require(!pairs.empty(), ErrorKind::Validation, "no twin pairs supplied");
  double n1 = 0.0;  // index twin survived
  double a = 0.0;   // both twins survived
  double b = 0.0;   // co-twin survived
  const double n2 = static_cast<double>(pairs.size());
  for (const TwinPair& pair : pairs) {
    if (pair.index_survived) {
      n1 += 1.0;
      if (pair.cotwin_survived) a += 1.0;
    }
    if (pair.cotwin_survived) b += 1.0;
  }
  require(n1 > 0.0, ErrorKind::Degenerate,
          "no index twin survived; the conditional recurrence risk is "
          "undefined");
  require(a > 0.0 && b > 0.0, ErrorKind::Degenerate,
          "a zero survival count leaves the recurrence-ratio CI undefined");

  SummaryEstimate est;
  est.scale = Scale::Log;
  est.value = (a / n1) / (b / n2);
  // Wald standard error of the log relative risk; the binomial numerator and
  // denominator share the 1/a - 1/n form.
  const double se =
      std::sqrt(1.0 / a - 1.0 / n1 + 1.0 / b - 1.0 / n2);
  est.lo = std::exp(std::log(est.value) - detail::kZ975 * se);
  est.hi = std::exp(std::log(est.value) + detail::kZ975 * se);
  return est;
}

SummaryEstimate estimate_survival(const std::vector<bool>& survived) {
  require(survived.size() >= 30, ErrorKind::Validation,
          "survival estimation needs at least 30 subjects");
  const double n = static_cast<double>(survived.size());
  const double k = static_cast<double>(
      std::count(survived.begin(), survived.end(), true));
  SummaryEstimate est;
  est.scale = Scale::Identity;
  est.value = k / n;
  const double se = std::sqrt(est.value * (1.0 - est.value) / n);
  est.lo = std::max(0.0, est.value - detail::kZ975 * se);
  est.hi = std::min(1.0, est.value + detail::kZ975 * se);
  return est;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();

  Rng arm0_rng = Rng::stream(cfg.seed, {kStreamCohortArm0});
  Rng arm1_rng = Rng::stream(cfg.seed, {kStreamCohortArm1});
  Rng twins_rng = Rng::stream(cfg.seed, {kStreamTwins});
  Rng survey_rng = Rng::stream(cfg.seed, {kStreamSurvey});

  std::vector<Individual> cohort = generate_cohort_arm(cfg, false, arm0_rng);
  {
    std::vector<Individual> exposed = generate_cohort_arm(cfg, true, arm1_rng);
    cohort.insert(cohort.end(), exposed.begin(), exposed.end());
  }

  ScenarioResult result;
  result.cox = fit_cox_binary(cohort);
  result.trr_hat = estimate_trr(generate_twin_pairs(cfg, twins_rng));
  result.s_hat = estimate_survival(generate_survey(cfg, survey_rng));

  SummaryEstimate r_mar;
  r_mar.value = result.cox.hr;
  r_mar.lo = result.cox.lo;
  r_mar.hi = result.cox.hi;
  r_mar.scale = Scale::Log;

  CiConfig ci_cfg;
  ci_cfg.seed = cfg.seed;
  const NumericCiResult ci =
      numeric_ci(PvfFamily::gamma(), r_mar, result.trr_hat, result.s_hat, ci_cfg);
  result.adjusted = ci.point;
  result.adj_lo = ci.lo;
  result.adj_hi = ci.hi;
  result.n_failed_draws = ci.n_failed;
  return result;
}

CoverageReport coverage_study(const ScenarioConfig& cfg, int n_reps) {
  cfg.validate();
  require(n_reps >= 100, ErrorKind::Validation,
          "a coverage study needs at least 100 replications");

  struct RepOutcome {
    double r_mar = 0.0;
    double r_adj = 0.0;
    bool mar_covers = false;
    bool adj_covers = false;
  };
  const auto n = static_cast<std::size_t>(n_reps);
  std::vector<std::optional<RepOutcome>> outcomes(n);
  std::vector<std::string> failures(n);

  parallel_for_indexed(n, [&](std::size_t i) {
    ScenarioConfig rep_cfg = cfg;
    // Per-rep seed derived from the master seed and the rep index: the study
    // is reproducible for any thread count.
    rep_cfg.seed = Rng::stream(cfg.seed, {kStreamRep, i}).next_u64();
    try {
      const ScenarioResult r = run_scenario(rep_cfg);
      RepOutcome o;
      o.r_mar = r.cox.hr;
      o.r_adj = r.adjusted;
      o.mar_covers = r.cox.lo <= cfg.r_cau && cfg.r_cau <= r.cox.hi;
      o.adj_covers = r.adj_lo <= cfg.r_cau && cfg.r_cau <= r.adj_hi;
      outcomes[i] = o;
    } catch (const Error& e) {
      failures[i] = to_string(e.kind());
    }
  });

  CoverageReport report;
  std::vector<double> r_mars;
  std::vector<double> r_adjs;
  r_mars.reserve(n);
  r_adjs.reserve(n);
  double mar_cover = 0.0;
  double adj_cover = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (outcomes[i].has_value()) {
      r_mars.push_back(outcomes[i]->r_mar);
      r_adjs.push_back(outcomes[i]->r_adj);
      if (outcomes[i]->mar_covers) mar_cover += 1.0;
      if (outcomes[i]->adj_covers) adj_cover += 1.0;
    } else {
      ++report.n_failed_reps;
      ++report.failure_kinds[failures[i]];
    }
  }

  if (report.n_failed_reps > 0.05 * n_reps) {
    std::string tallies;
    for (const auto& [kind, count] : report.failure_kinds) {
      if (!tallies.empty()) tallies += ", ";
      tallies += kind + ": " + std::to_string(count);
    }
    throw_error(ErrorKind::TooManyFailures,
                std::to_string(report.n_failed_reps) + " of " +
                    std::to_string(n_reps) + " replications failed (" +
                    tallies + "); the coverage estimate would be biased");
  }

  report.n_reps = static_cast<int>(r_mars.size());
  report.median_r_mar = detail::median(std::move(r_mars));
  report.median_r_adjusted = detail::median(std::move(r_adjs));
  report.coverage_marginal = mar_cover / report.n_reps;
  report.coverage_adjusted = adj_cover / report.n_reps;
  return report;
}

}  // namespace frailhaz
