#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frailhaz/pvf.hpp"

namespace frailhaz {

// Conversion between the causal hazard ratio r (conditional on frailty U) and
// the marginal hazard ratio r_mar(t1) estimated among survivors of a
// left-truncated cohort.  Conditioning on survival selects low-frailty
// subjects preferentially from the higher-hazard arm, attenuating the
// observed ratio toward — and eventually past — the null.

// r_mar = r * ((1 + H0/nu) / (1 + r H0/nu))^(m+1).
// Equals r exactly when h0 = 0 or Var(U) = 0.
double marginal_from_causal(const PvfParams& params, double h0, double r);

// Inverse of marginal_from_causal in r.
//   Gamma:            closed form r = r_mar / (1 + K (1 - r_mar)), K = H0/nu;
//                     OutOfRange when the denominator is <= 0 (r_mar at or
//                     above the family ceiling 1 + 1/K).
//   InverseGaussian:  positive root of
//                     r^2 (1 + H0/nu) - r r_mar^2 H0/nu - r_mar^2 = 0
//                     (the other root is negative; a hazard ratio is positive).
//   Hougaard:         bracketed root-find on ln r over [ln 1e-6, ln 1e6]; the
//                     map is increasing for m < 0.
//   CompoundPoisson:  the map increases up to r_crit = nu/(m H0) and decreases
//                     beyond, so the bracket is capped at r_crit and the lower
//                     (causal-branch) root is returned; OutOfRange if the peak
//                     lies below r_mar.
// r_mar = 1 returns exactly 1 (the null is preserved by survivor selection).
double causal_from_marginal(const PvfParams& params, double h0, double r_mar);

// Quick heuristic: evaluates causal_from_marginal at the cumulative hazard of
// the population median event time, i.e. h0 = invert_survival(s_median) with
// s_median = 0.5 by default.  Defined for the Gamma family only; other
// families throw UnsupportedFamily rather than silently applying the Gamma
// closed form.
double causal_from_marginal_at_median(const PvfParams& params, double r_mar,
                                      double s_median = 0.5);

// Limit of r_mar(t) as t -> infinity: r^(-m).  Gamma (m = 0) tends to 1; for
// m > 0 the marginal ratio crosses to the opposite side of the null.  The
// degenerate Var(U)=0 case has no selection and returns r itself.
double asymptotic_marginal(const PvfParams& params, double r);

// One output point of a curve operation.  `value` is empty when the point was
// skipped or failed; `note` then carries the reason (also suitable as a
// warning record).
struct CurvePoint {
  double x = 0.0;
  std::optional<double> value;
  std::string note;
};

// Marginal hazard ratio as a function of the population survival fraction s,
// at fixed causal r and frailty variance (params built per family with
// Var(U) = variance).  s = 1 emits r exactly (no one lost yet).  Grid points
// at or below the CompoundPoisson floor q are skipped with a note.
// Points are emitted in grid order.
std::vector<CurvePoint> hazard_ratio_curve(const PvfFamily& family,
                                           double variance, double r,
                                           const std::vector<double>& s_grid);

// Causal hazard ratio as a function of the assumed TRR(t1) at fixed observed
// r_mar and S(t1): per grid point, solve_nu then causal_from_marginal.
// Per-point solver errors are recorded in the point's note, not thrown.
std::vector<CurvePoint> trr_sensitivity_curve(const PvfFamily& family,
                                              double s_t1, double r_mar,
                                              const std::vector<double>& trr_grid);

}  // namespace frailhaz
