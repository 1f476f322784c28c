#pragma once

#include <string>

namespace frailhaz {

// Power-variance-function (PVF) frailty families.
//
// A frailty U is an unobserved positive multiplier on an individual's hazard,
// standardized to E(U) = 1.  The PVF class is parameterized by (nu, rho, m)
// with log-Laplace transform
//
//     ln L(c) = rho * ((1 + c/nu)^(-m) - 1),        m != 0,
//
// and the E(U) = 1 constraint ties rho to nu: m * rho = nu.  Each concrete
// family fixes all shape freedom except the single scale parameter nu:
//
//   Gamma             m -> 0 limit, one parameter:  ln L(c) = -nu ln(1 + c/nu)
//   InverseGaussian   m = -1/2, rho = -2 nu
//   Hougaard          m in (-1, 0) chosen by the user, rho = nu / m
//   CompoundPoisson   q in (0, 1) chosen by the user: rho = -ln q fixed,
//                     m = nu / rho > 0.  q is the non-susceptible fraction,
//                     the point mass P(U = 0) = L(inf) = e^(-rho).
//
// Var(U) = (m+1)/nu in all cases (1/nu for Gamma).

enum class FamilyTag { Gamma, InverseGaussian, Hougaard, CompoundPoisson };

struct PvfFamily {
  FamilyTag tag = FamilyTag::Gamma;
  double m = 0.0;  // Hougaard shape, in (-1, 0)
  double q = 0.0;  // CompoundPoisson non-susceptible fraction, in (0, 1)

  static PvfFamily gamma();
  static PvfFamily inverse_gaussian();
  static PvfFamily hougaard(double m);
  static PvfFamily compound_poisson(double q);

  // Parses "gamma" | "inverse-gaussian" | "hougaard" | "compound-poisson"
  // (shape parameters supplied separately).  Throws Validation on unknown
  // names.
  static FamilyTag parse_tag(const std::string& name);

  std::string name() const;
};

struct PvfParams {
  PvfFamily family;
  double nu = 0.0;   // > 0; +infinity encodes the degenerate Var(U)=0 case
  double rho = 0.0;  // nu/m; NaN for Gamma (never used on the Gamma path)
  double m = 0.0;    // 0 for Gamma; nu/rho (> 0) for CompoundPoisson

  // Builds the full parameter triple from nu for a family.  nu must be
  // positive and finite.
  static PvfParams from_nu(const PvfFamily& family, double nu);

  // Builds params with a requested Var(U) = (m+1)/nu.  For CompoundPoisson
  // the variance floor is 1/rho = -1/ln(q) (as nu -> infinity the Poisson
  // limit retains that much variance); below it throws Validation.
  static PvfParams from_variance(const PvfFamily& family, double variance);

  // The Var(U) = 0 limit: U == 1, L(c) = e^{-c}.  Accepted by every
  // operation; survival-conditioning then has no effect.
  static PvfParams degenerate();

  bool is_degenerate() const;
  double variance() const;  // (m+1)/nu; 0 when degenerate
};

// Smallest attainable Var(U) for CompoundPoisson(q): 1/rho = -1/ln(q).
double compound_poisson_min_variance(double q);

// ln L(c) of the frailty's Laplace transform at c >= 0.
double ln_laplace(const PvfParams& params, double c);

// L(c) = E(e^{-cU}) in (0, 1]; equals 1 at c = 0.
double laplace(const PvfParams& params, double c);

// Population survival to cumulative baseline hazard h0: S = L(h0).
double survival(const PvfParams& params, double h0);

// Inverse of survival: the cumulative baseline hazard H0 with L(H0) = s.
// Requires s in (0, 1); for CompoundPoisson additionally s > q, since
// survival can never drop below the non-susceptible mass.
double invert_survival(const PvfParams& params, double s);

// Twin recurrence risk at cumulative hazard h0 for pairs sharing one frailty:
// TRR = L(2 h0) / L(h0)^2 >= 1, with equality iff h0 = 0 or Var(U) = 0.
double trr(const PvfParams& params, double h0);
double ln_trr(const PvfParams& params, double h0);

}  // namespace frailhaz
