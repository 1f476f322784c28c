#include "frailhaz/solver.hpp"

#include <cmath>
#include <string>

#include "frailhaz/errors.hpp"
#include "root_find.hpp"

namespace frailhaz {

namespace {

constexpr double kLnNuLo = -18.420680743952367;  // ln 1e-8
constexpr double kLnNuHi = 18.420680743952367;   // ln 1e8
constexpr double kTolResidual = 1e-10;
constexpr double kTolBracket = 1e-12;
constexpr int kMaxIter = 200;
constexpr int kDiagnosticGridPoints = 50;

// Log-scale residual f(ln nu) = ln trr_target - ln TRR_model(nu; s).
//
// TRR_model at fixed S shrinks as nu grows (less heterogeneity), so f is
// increasing.  Both branches below are algebraic rearrangements of
// ln L(2 H0) - 2 ln L(H0) with H0 = invert_survival(s) substituted
// symbolically; the rearrangement is what keeps the value finite over the
// whole bracket (computing H0 first overflows near nu = 1e-8, where
// H0 ~ nu * s^(-1/nu) blows up).
double residual(const PvfFamily& family, double ln_nu, double ln_trr_target,
                double ln_s) {
  const double nu = std::exp(ln_nu);
  if (family.tag == FamilyTag::Gamma) {
    // 1 + 2 H0/nu = 2 s^(-1/nu) - 1 = s^(-1/nu) (2 - s^(1/nu)), hence
    // ln TRR = -ln s - nu ln(2 - s^(1/nu)); 2 - s^(1/nu) is written as
    // 1 - expm1(ln s / nu) so the nu -> infinity end keeps full precision.
    return ln_trr_target + ln_s + nu * std::log1p(-std::expm1(ln_s / nu));
  }

  double m;
  double rho;
  switch (family.tag) {
    case FamilyTag::InverseGaussian:
      m = -0.5;
      rho = nu / m;
      break;
    case FamilyTag::Hougaard:
      m = family.m;
      rho = nu / m;
      break;
    case FamilyTag::CompoundPoisson:
      rho = -std::log(family.q);
      m = nu / rho;
      break;
    default:
      throw_error(ErrorKind::Validation, "unreachable family tag");
  }

  // x = H0/nu = t^(-1/m) - 1 with t = 1 + ln(s)/rho.  x may overflow to
  // +infinity at the small-nu end for compound Poisson (m -> 0); the chain
  // log1p(inf) = inf, expm1(-m * inf) = -1 then yields the exact ceiling
  // residual ln(trr * q), so no special-casing is needed.
  const double t = 1.0 + ln_s / rho;
  const double x = std::expm1(-std::log(t) / m);
  const double a1 = -m * std::log1p(x);
  const double a2 = -m * std::log1p(2.0 * x);
  return ln_trr_target - rho * (std::expm1(a2) - 2.0 * std::expm1(a1));
}

std::string sign_report(double f_lo, double f_hi) {
  auto fmt = [](double v) {
    return (v > 0 ? "+" : "") + std::to_string(v);
  };
  return "residual at nu=1e-8 is " + fmt(f_lo) + ", at nu=1e8 is " + fmt(f_hi);
}

}  // namespace

void FrailtySummary::validate() const {
  require(std::isfinite(trr_t1) && trr_t1 > 0.0, ErrorKind::Validation,
          "TRR must be positive and finite");
  require(std::isfinite(s_t1) && s_t1 > 0.0 && s_t1 < 1.0, ErrorKind::Validation,
          "survival fraction must lie strictly in (0, 1)");
  // A conditional survival probability cannot exceed 1: TRR * S = P(co-twin
  // survives | index survives) <= 1.
  require(trr_t1 * s_t1 <= 1.0 + 1e-12, ErrorKind::Validation,
          "TRR exceeds 1/S; the summary pair is not a valid probability statement");
}

PvfParams solve_nu(const PvfFamily& family, const FrailtySummary& summary,
                   SolveDiagnostics* diagnostics) {
  summary.validate();
  if (summary.trr_t1 <= 1.0 + 1e-12) {
    throw_error(ErrorKind::Degenerate,
                "TRR <= 1 carries no heterogeneity signal; treat Var(U) = 0");
  }
  if (family.tag == FamilyTag::CompoundPoisson) {
    // The survival floor q does not depend on nu, so reject once up front.
    require(summary.s_t1 > family.q, ErrorKind::Validation,
            "survival fraction is at or below the compound-Poisson "
            "non-susceptible floor q=" + std::to_string(family.q));
  }

  const double ln_trr_target = std::log(summary.trr_t1);
  const double ln_s = std::log(summary.s_t1);
  auto f = [&](double ln_nu) {
    return residual(family, ln_nu, ln_trr_target, ln_s);
  };

  double a = kLnNuLo;
  double b = kLnNuHi;
  double fa = f(a);
  double fb = f(b);
  SolveDiagnostics diag;

  if ((fa < 0.0) == (fb < 0.0)) {
    // No sign change at the bracket ends.  The residuals here are monotone,
    // but before reporting NoRoot scan a diagnostic grid: an interior sign
    // change would mean non-monotonicity (multiple roots), which deserves a
    // warning rather than a missed solution.
    bool found = false;
    double prev_x = a;
    double prev_f = fa;
    for (int i = 1; i < kDiagnosticGridPoints; ++i) {
      const double x = a + (b - a) * i / (kDiagnosticGridPoints - 1);
      const double fx = f(x);
      if ((fx < 0.0) != (prev_f < 0.0)) {
        b = x;
        fb = fx;
        a = prev_x;
        fa = prev_f;
        diag.warnings.push_back(
            "residual is non-monotone on the diagnostic grid; multiple roots "
            "suspected, returning the smallest-nu root");
        found = true;
        break;
      }
      prev_x = x;
      prev_f = fx;
    }
    if (!found) {
      const char* hint =
          fa > 0.0
              ? " (TRR is above the ceiling attainable by this family at this S)"
              : " (TRR is below the floor attainable by this family at this S)";
      throw_error(ErrorKind::NoRoot,
                  "no sign change across the nu bracket: " + sign_report(fa, fb) + hint);
    }
  }

  const detail::RootResult root = detail::illinois_root(
      f, a, b, fa, fb, kTolResidual, kTolBracket, kMaxIter);
  diag.iterations = root.iterations;
  diag.residual = root.fx;
  if (diagnostics != nullptr) *diagnostics = diag;
  return PvfParams::from_nu(family, std::exp(root.x));
}

}  // namespace frailhaz
