#include "frailhaz/adjust.hpp"

#include <cmath>
#include <string>

#include "frailhaz/errors.hpp"
#include "frailhaz/solver.hpp"
#include "root_find.hpp"

namespace frailhaz {

namespace {

void validate_h0(double h0) {
  require(std::isfinite(h0) && h0 >= 0.0, ErrorKind::Validation,
          "cumulative hazard must be nonnegative and finite");
}

void validate_hr(double r, const char* label) {
  require(std::isfinite(r) && r > 0.0, ErrorKind::Validation,
          std::string(label) + " must be positive and finite");
}

double ln_marginal_from_causal(const PvfParams& params, double h0, double r) {
  // ln r_mar = ln r + (m+1) (log1p(H0/nu) - log1p(r H0/nu)).
  return std::log(r) + (params.m + 1.0) * (std::log1p(h0 / params.nu) -
                                           std::log1p(r * h0 / params.nu));
}

// Inverse by bracketed root-find on ln r, used by the Hougaard and
// compound-Poisson branches (the Gamma and inverse-Gaussian inverses are
// closed-form).
double causal_from_marginal_numeric(const PvfParams& params, double h0,
                                    double r_mar) {
  const double ln_target = std::log(r_mar);
  auto g = [&](double ln_r) {
    return ln_marginal_from_causal(params, h0, std::exp(ln_r)) - ln_target;
  };

  double lo = std::log(1e-6);
  double hi = std::log(1e6);
  if (params.m > 0.0) {
    // d ln r_mar / d ln r = 1 - (m+1) rK/(1+rK) with K = H0/nu vanishes at
    // r_crit = nu/(m H0): the marginal ratio peaks there and declines beyond
    // (strong enough exposures deplete their own susceptibles).  The inverse
    // therefore lives on the increasing branch r <= r_crit; the reflected
    // root beyond the peak is not the causal solution.
    const double r_crit = params.nu / (params.m * h0);
    hi = std::min(hi, std::log(r_crit));
    if (hi <= lo) {
      throw_error(ErrorKind::OutOfRange,
                  "attainable marginal range degenerate: r_crit <= 1e-6");
    }
  }

  const double g_lo = g(lo);
  const double g_hi = g(hi);
  if ((g_lo < 0.0) == (g_hi < 0.0)) {
    if (params.m > 0.0 && g_hi < 0.0) {
      throw_error(ErrorKind::OutOfRange,
                  "marginal HR " + std::to_string(r_mar) +
                      " exceeds the attainable maximum " +
                      std::to_string(std::exp(g_hi + ln_target)) +
                      " for this compound-Poisson frailty");
    }
    throw_error(ErrorKind::OutOfRange,
                "marginal HR " + std::to_string(r_mar) +
                    " lies outside the attainable range of the family at this H0");
  }
  const detail::RootResult root =
      detail::illinois_root(g, lo, hi, g_lo, g_hi, 1e-12, 1e-14, 200);
  return std::exp(root.x);
}

}  // namespace

double marginal_from_causal(const PvfParams& params, double h0, double r) {
  validate_h0(h0);
  validate_hr(r, "causal hazard ratio");
  if (params.is_degenerate() || h0 == 0.0 || r == 1.0) return r;
  return std::exp(ln_marginal_from_causal(params, h0, r));
}

double causal_from_marginal(const PvfParams& params, double h0, double r_mar) {
  validate_h0(h0);
  validate_hr(r_mar, "marginal hazard ratio");
  if (params.is_degenerate() || h0 == 0.0) return r_mar;
  if (r_mar == 1.0) return 1.0;  // the null is preserved exactly

  switch (params.family.tag) {
    case FamilyTag::Gamma: {
      // r_mar = r (1+K)/(1+rK), K = H0/nu  =>  r = r_mar / (1 + K(1 - r_mar)).
      const double K = h0 / params.nu;
      const double denom = 1.0 + K * (1.0 - r_mar);
      if (denom <= 0.0) {
        throw_error(ErrorKind::OutOfRange,
                    "marginal HR " + std::to_string(r_mar) +
                        " is at or above the gamma-frailty ceiling " +
                        std::to_string(1.0 + 1.0 / K) +
                        "; the summary inputs are inconsistent with the model");
      }
      return r_mar / denom;
    }
    case FamilyTag::InverseGaussian: {
      // Squaring r_mar = r ((1+K)/(1+rK))^{1/2} gives
      // r^2 (1+K) - r r_mar^2 K - r_mar^2 = 0.  The roots' product is
      // -r_mar^2/(1+K) < 0, so exactly one root is positive; take it.
      const double K = h0 / params.nu;
      const double A = 1.0 + K;
      const double B = r_mar * r_mar * K;
      const double C = r_mar * r_mar;
      return (B + std::sqrt(B * B + 4.0 * A * C)) / (2.0 * A);
    }
    case FamilyTag::Hougaard:
    case FamilyTag::CompoundPoisson:
      return causal_from_marginal_numeric(params, h0, r_mar);
  }
  throw_error(ErrorKind::Validation, "unreachable family tag");
}

double causal_from_marginal_at_median(const PvfParams& params, double r_mar,
                                      double s_median) {
  require(params.family.tag == FamilyTag::Gamma, ErrorKind::UnsupportedFamily,
          "the median-time heuristic is defined for the gamma family only");
  require(s_median > 0.0 && s_median < 1.0, ErrorKind::Validation,
          "median survival fraction must lie strictly in (0, 1)");
  if (params.is_degenerate()) return r_mar;
  return causal_from_marginal(params, invert_survival(params, s_median), r_mar);
}

double asymptotic_marginal(const PvfParams& params, double r) {
  validate_hr(r, "causal hazard ratio");
  // With no heterogeneity there is no survivor selection at any horizon.
  if (params.is_degenerate()) return r;
  return std::pow(r, -params.m);
}

std::vector<CurvePoint> hazard_ratio_curve(const PvfFamily& family,
                                           double variance, double r,
                                           const std::vector<double>& s_grid) {
  validate_hr(r, "causal hazard ratio");
  const PvfParams params = PvfParams::from_variance(family, variance);
  std::vector<CurvePoint> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) {
    require(s > 0.0 && s <= 1.0, ErrorKind::Validation,
            "curve grid survival fractions must lie in (0, 1]");
    CurvePoint point;
    point.x = s;
    if (s == 1.0) {
      point.value = r;  // nothing lost to truncation yet
    } else if (family.tag == FamilyTag::CompoundPoisson && s <= family.q) {
      point.note = "skipped: survival fraction at or below the non-susceptible "
                   "floor q=" + std::to_string(family.q);
    } else {
      point.value = marginal_from_causal(params, invert_survival(params, s), r);
    }
    out.push_back(std::move(point));
  }
  return out;
}

std::vector<CurvePoint> trr_sensitivity_curve(const PvfFamily& family,
                                              double s_t1, double r_mar,
                                              const std::vector<double>& trr_grid) {
  validate_hr(r_mar, "marginal hazard ratio");
  require(s_t1 > 0.0 && s_t1 < 1.0, ErrorKind::Validation,
          "survival fraction must lie strictly in (0, 1)");
  std::vector<CurvePoint> out;
  out.reserve(trr_grid.size());
  for (double trr_value : trr_grid) {
    CurvePoint point;
    point.x = trr_value;
    try {
      FrailtySummary summary;
      summary.trr_t1 = trr_value;
      summary.s_t1 = s_t1;
      const PvfParams params = solve_nu(family, summary);
      point.value =
          causal_from_marginal(params, invert_survival(params, s_t1), r_mar);
    } catch (const Error& e) {
      point.note = std::string(to_string(e.kind())) + ": " + e.what();
    }
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace frailhaz
