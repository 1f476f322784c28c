#include "frailhaz/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "frailhaz/adjust.hpp"
#include "frailhaz/errors.hpp"
#include "frailhaz/parallel.hpp"
#include "frailhaz/rng.hpp"
#include "frailhaz/solver.hpp"
#include "stats_util.hpp"

namespace frailhaz {

namespace {

double sample_estimate(const SummaryEstimate& est, double z) {
  if (est.scale == Scale::Log) return std::exp(std::log(est.value) + est.sd() * z);
  return est.value + est.sd() * z;
}

// One pipeline evaluation; shared by the per-draw path and the central-value
// point estimate.
double causal_from_summaries(const PvfFamily& family, double r_mar, double trr,
                             double s) {
  FrailtySummary summary;
  summary.trr_t1 = trr;
  summary.s_t1 = s;
  const PvfParams params = solve_nu(family, summary);
  return causal_from_marginal(params, invert_survival(params, s), r_mar);
}

}  // namespace

void SummaryEstimate::validate() const {
  require(std::isfinite(value) && std::isfinite(lo) && std::isfinite(hi),
          ErrorKind::Validation, "summary estimate must be finite");
  require(lo <= value && value <= hi, ErrorKind::Validation,
          "summary estimate must satisfy lo <= value <= hi");
  if (scale == Scale::Log) {
    require(lo > 0.0, ErrorKind::Validation,
            "log-scale summary estimate must be positive");
  }
}

double SummaryEstimate::sd() const {
  // The implied sd comes from the lower half-width only; for asymmetric
  // inputs this is a documented approximation (the upper half-width of a
  // log-scale Wald interval carries the same information in theory).
  if (scale == Scale::Log) return (std::log(value) - std::log(lo)) / detail::kZ975;
  return (value - lo) / detail::kZ975;
}

void CiConfig::validate() const {
  require(n_draws >= 100, ErrorKind::Validation, "n_draws must be at least 100");
  require(alpha > 0.0 && alpha < 1.0, ErrorKind::Validation,
          "alpha must lie strictly in (0, 1)");
}

NumericCiResult numeric_ci(const PvfFamily& family,
                           const SummaryEstimate& r_mar,
                           const SummaryEstimate& trr,
                           const SummaryEstimate& s,
                           const CiConfig& cfg) {
  r_mar.validate();
  trr.validate();
  s.validate();
  cfg.validate();

  NumericCiResult result;
  // The point estimate uses the central values; a failure here is a real
  // domain error on the inputs and propagates as such.
  result.point = causal_from_summaries(family, r_mar.value, trr.value, s.value);

  const auto n = static_cast<std::size_t>(cfg.n_draws);
  std::vector<std::optional<double>> draws(n);
  std::vector<const char*> failures(n, nullptr);

  parallel_for_indexed(n, [&](std::size_t i) {
    // Per-draw substream: draw i's values depend only on (seed, i), so any
    // scheduling of the loop produces identical results.  The three normals
    // are consumed in a fixed order (r_mar, TRR, S).
    Rng rng = Rng::stream(cfg.seed, {kStreamNumericCi, i});
    const double rm = sample_estimate(r_mar, rng.normal());
    const double tr = sample_estimate(trr, rng.normal());
    double sv = sample_estimate(s, rng.normal());
    sv = std::clamp(sv, 1e-6, 1.0 - 1e-6);

    // Invariant screens mirror FrailtySummary: a TRR draw at or below 1 has
    // no heterogeneity signal, and TRR > 1/S is not a valid probability
    // statement.  Both reject the draw (no resampling — that would bias the
    // quantiles toward the feasible region).
    if (tr <= 1.0 + 1e-12) {
      failures[i] = to_string(ErrorKind::Degenerate);
      return;
    }
    if (tr * sv > 1.0 + 1e-12) {
      failures[i] = to_string(ErrorKind::Validation);
      return;
    }
    if (rm <= 0.0) {
      failures[i] = to_string(ErrorKind::Validation);
      return;
    }
    try {
      draws[i] = causal_from_summaries(family, rm, tr, sv);
    } catch (const Error& e) {
      failures[i] = to_string(e.kind());
    }
  });

  std::vector<double> successes;
  successes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (draws[i].has_value()) {
      successes.push_back(*draws[i]);
    } else if (failures[i] != nullptr) {
      ++result.failure_kinds[failures[i]];
      ++result.n_failed;
    }
  }

  if (result.n_failed > 0.2 * cfg.n_draws) {
    std::string dominant = "unknown";
    int dominant_count = 0;
    for (const auto& [kind, count] : result.failure_kinds) {
      if (count > dominant_count) {
        dominant = kind;
        dominant_count = count;
      }
    }
    throw_error(ErrorKind::TooManyFailures,
                std::to_string(result.n_failed) + " of " +
                    std::to_string(cfg.n_draws) +
                    " Monte-Carlo draws failed (dominant kind: " + dominant +
                    "); the interval would not be reliable");
  }

  std::sort(successes.begin(), successes.end());
  result.lo = detail::quantile_sorted(successes, cfg.alpha / 2.0);
  result.hi = detail::quantile_sorted(successes, 1.0 - cfg.alpha / 2.0);
  return result;
}

PluginCiResult plugin_ci(const PvfFamily& family, const SummaryEstimate& r_mar,
                         double trr_value, double s_value) {
  r_mar.validate();
  FrailtySummary summary;
  summary.trr_t1 = trr_value;
  summary.s_t1 = s_value;
  const PvfParams params = solve_nu(family, summary);
  const double h0 = invert_survival(params, s_value);

  PluginCiResult result;
  result.point = causal_from_marginal(params, h0, r_mar.value);
  const double mapped_lo = causal_from_marginal(params, h0, r_mar.lo);
  const double mapped_hi = causal_from_marginal(params, h0, r_mar.hi);
  // The map is monotone, so the endpoints map to endpoints; order can flip.
  result.lo = std::min(mapped_lo, mapped_hi);
  result.hi = std::max(mapped_lo, mapped_hi);
  return result;
}

}  // namespace frailhaz
