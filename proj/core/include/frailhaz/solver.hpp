#pragma once

#include <string>
#include <vector>

#include "frailhaz/pvf.hpp"

namespace frailhaz {

// Twin-study summary data identifying the frailty scale parameter.
struct FrailtySummary {
  double trr_t1 = 0.0;  // twin recurrence risk at t1, must exceed 1
  double s_t1 = 0.0;    // population survival to t1, in (0, 1)
  double t1 = 0.0;      // informational label only; no math depends on it

  // Throws Validation unless trr_t1 > 1 - eps and s_t1 in (0,1) and
  // trr_t1 * s_t1 <= 1 (a conditional survival probability cannot
  // exceed 1).  trr_t1 <= 1 + 1e-12 is reported as Degenerate by solve_nu.
  void validate() const;
};

struct SolveDiagnostics {
  int iterations = 0;
  double residual = 0.0;              // log-scale residual at the returned nu
  std::vector<std::string> warnings;  // e.g. multiple-root suspicion
};

// Recovers nu from {TRR(t1), S(t1)} for the chosen family.
//
// The match condition TRR_model(nu) = trr_t1 at fixed S is solved in log
// space.  With H0(nu) = invert_survival(s) recomputed per candidate:
//
//   Gamma:    H0 = nu (s^{-1/nu} - 1) gives 1 + 2 H0/nu = s^{-1/nu}(2 - s^{1/nu}),
//             so  ln TRR = -ln s - nu ln(2 - s^{1/nu}) and the residual is
//             f(nu) = ln trr + ln s + nu ln(2 - s^{1/nu}).
//   General:  with w = (1 + ln s / rho)^{1/m} and x = H0/nu = (1-w)/w,
//             f(nu) = ln trr - rho (expm1(a2) - 2 expm1(a1)),
//             a_k = -m log1p(k x).
//
// Both forms stay finite over the whole bracket nu in [1e-8, 1e8] (the naive
// TRR difference overflows at the edges).  f is increasing in nu — smaller nu
// means more heterogeneity and larger model TRR — so a sign change across the
// bracket pins the unique root; an Illinois-damped regula falsi refines it to
// |f| < 1e-10 or bracket width < 1e-12 within 200 iterations.
//
// Errors:
//   Degenerate  if trr_t1 <= 1 + 1e-12 (caller should treat Var(U) = 0);
//   NoRoot      if the residual has the same sign at both bracket ends (the
//                message reports both signs).  Before giving up, a 50-point
//                diagnostic grid is scanned: an interior sign change means the
//                residual is non-monotone, and the root found there is
//                returned with a multiple-root-suspicion warning.
PvfParams solve_nu(const PvfFamily& family, const FrailtySummary& summary,
                   SolveDiagnostics* diagnostics = nullptr);

}  // namespace frailhaz
