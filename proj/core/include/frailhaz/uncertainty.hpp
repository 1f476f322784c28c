#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "frailhaz/pvf.hpp"

namespace frailhaz {

enum class Scale { Log, Identity };

// A point estimate with a 95% CI symmetric on `scale`.  Degenerate intervals
// (lo == value == hi) are allowed and mean "treat as exact".
struct SummaryEstimate {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  Scale scale = Scale::Log;

  // Throws Validation unless lo <= value <= hi and, on the Log scale, all
  // three are positive.  Consumers that need tighter ranges (e.g. survival
  // inside (0,1)) enforce them at the point of use.
  void validate() const;

  // Standard deviation implied by the *lower* half-width:
  //   Log:      (ln value - ln lo) / z_0.975
  //   Identity: (value - lo) / z_0.975
  // Zero for degenerate intervals.
  double sd() const;
};

struct CiConfig {
  int n_draws = 10000;
  double alpha = 0.05;
  std::uint64_t seed = 0;

  void validate() const;  // n_draws >= 100, alpha in (0, 1)
};

struct NumericCiResult {
  double point = 0.0;  // causal HR from the three central values
  double lo = 0.0;
  double hi = 0.0;
  int n_failed = 0;
  std::map<std::string, int> failure_kinds;  // error-kind name -> count
};

// Monte-Carlo propagation of the three summary inputs to a CI for the causal
// hazard ratio.  Per draw i (an independent substream keyed by i, so results
// are identical for any thread count):
//   1. sample r_mar and TRR log-normally and S normally around their values,
//      with sd implied by each input's lower half-width; clamp S draws to
//      (1e-6, 1 - 1e-6);
//   2. reject draws violating the summary invariants (TRR <= 1 counts as
//      Degenerate, TRR > 1/S as Validation) — rejection, not resampling,
//      keeps the quantiles unbiased, and the count is surfaced instead;
//   3. solve_nu, then causal_from_marginal; solver/adjust errors also reject.
// The interval is the empirical alpha/2 and 1-alpha/2 quantiles of the
// surviving draws; the point estimate is computed from the central values.
// Throws TooManyFailures when more than 20% of draws fail (the message names
// the dominant failure kind).
NumericCiResult numeric_ci(const PvfFamily& family,
                           const SummaryEstimate& r_mar,
                           const SummaryEstimate& trr,
                           const SummaryEstimate& s,
                           const CiConfig& cfg = {});

struct PluginCiResult {
  double point = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Plug-in interval: treats TRR and S as exact, solves nu once, and maps each
// of r_mar's {lo, value, hi} through causal_from_marginal.  Valid because the
// map is monotone in r_mar at fixed params; the output is returned sorted
// ascending (the map can reverse order).
PluginCiResult plugin_ci(const PvfFamily& family, const SummaryEstimate& r_mar,
                         double trr_value, double s_value);

}  // namespace frailhaz
