#include "frailhaz/pvf.hpp"

#include <cmath>
#include <limits>

#include "frailhaz/errors.hpp"

namespace frailhaz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_family(const PvfFamily& family) {
  switch (family.tag) {
    case FamilyTag::Gamma:
    case FamilyTag::InverseGaussian:
      break;
    case FamilyTag::Hougaard:
      require(family.m > -1.0 && family.m < 0.0, ErrorKind::Validation,
              "Hougaard shape m must lie strictly in (-1, 0)");
      break;
    case FamilyTag::CompoundPoisson:
      require(family.q > 0.0 && family.q < 1.0, ErrorKind::Validation,
              "compound-Poisson non-susceptible fraction q must lie strictly in (0, 1)");
      break;
  }
}

}  // namespace

PvfFamily PvfFamily::gamma() { return PvfFamily{FamilyTag::Gamma, 0.0, 0.0}; }

PvfFamily PvfFamily::inverse_gaussian() {
  return PvfFamily{FamilyTag::InverseGaussian, -0.5, 0.0};
}

PvfFamily PvfFamily::hougaard(double m) {
  PvfFamily family{FamilyTag::Hougaard, m, 0.0};
  validate_family(family);
  return family;
}

PvfFamily PvfFamily::compound_poisson(double q) {
  PvfFamily family{FamilyTag::CompoundPoisson, 0.0, q};
  validate_family(family);
  return family;
}

FamilyTag PvfFamily::parse_tag(const std::string& name) {
  if (name == "gamma") return FamilyTag::Gamma;
  if (name == "inverse-gaussian") return FamilyTag::InverseGaussian;
  if (name == "hougaard") return FamilyTag::Hougaard;
  if (name == "compound-poisson") return FamilyTag::CompoundPoisson;
  throw_error(ErrorKind::Validation,
              "unknown family '" + name +
                  "' (expected gamma, inverse-gaussian, hougaard or compound-poisson)");
}

std::string PvfFamily::name() const {
  switch (tag) {
    case FamilyTag::Gamma: return "gamma";
    case FamilyTag::InverseGaussian: return "inverse-gaussian";
    case FamilyTag::Hougaard: return "hougaard";
    case FamilyTag::CompoundPoisson: return "compound-poisson";
  }
  return "unknown";
}

PvfParams PvfParams::from_nu(const PvfFamily& family, double nu) {
  validate_family(family);
  require(std::isfinite(nu) && nu > 0.0, ErrorKind::Validation,
          "nu must be positive and finite");
  PvfParams params;
  params.family = family;
  params.nu = nu;
  switch (family.tag) {
    case FamilyTag::Gamma:
      params.m = 0.0;
      params.rho = kNaN;  // unused on the Gamma path; NaN flags accidental use
      break;
    case FamilyTag::InverseGaussian:
      params.m = -0.5;
      params.rho = nu / params.m;
      break;
    case FamilyTag::Hougaard:
      params.m = family.m;
      params.rho = nu / params.m;
      break;
    case FamilyTag::CompoundPoisson:
      params.rho = -std::log(family.q);  // fixed by q; positive
      params.m = nu / params.rho;        // positive, varies with nu
      break;
  }
  return params;
}

double compound_poisson_min_variance(double q) {
  require(q > 0.0 && q < 1.0, ErrorKind::Validation,
          "compound-Poisson non-susceptible fraction q must lie strictly in (0, 1)");
  return -1.0 / std::log(q);
}

PvfParams PvfParams::from_variance(const PvfFamily& family, double variance) {
  validate_family(family);
  require(std::isfinite(variance) && variance > 0.0, ErrorKind::Validation,
          "Var(U) must be positive and finite");
  // Var(U) = (m+1)/nu, so nu = (m+1)/Var for the fixed-m families.  For
  // compound Poisson m = nu/rho, giving Var = 1/rho + 1/nu: the Poisson limit
  // nu -> infinity retains variance 1/rho, which is the attainable floor.
  switch (family.tag) {
    case FamilyTag::Gamma:
      return from_nu(family, 1.0 / variance);
    case FamilyTag::InverseGaussian:
      return from_nu(family, 0.5 / variance);
    case FamilyTag::Hougaard:
      return from_nu(family, (1.0 + family.m) / variance);
    case FamilyTag::CompoundPoisson: {
      const double floor = compound_poisson_min_variance(family.q);
      require(variance > floor, ErrorKind::Validation,
              "compound-Poisson with q=" + std::to_string(family.q) +
                  " cannot have Var(U) <= " + std::to_string(floor));
      return from_nu(family, 1.0 / (variance - floor));
    }
  }
  throw_error(ErrorKind::Validation, "unreachable family tag");
}

PvfParams PvfParams::degenerate() {
  PvfParams params;
  params.family = PvfFamily::gamma();
  params.nu = kInf;
  params.rho = kNaN;
  params.m = 0.0;
  return params;
}

bool PvfParams::is_degenerate() const { return std::isinf(nu); }

double PvfParams::variance() const {
  if (is_degenerate()) return 0.0;
  return (m + 1.0) / nu;
}

double ln_laplace(const PvfParams& params, double c) {
  require(c >= 0.0, ErrorKind::Validation,
          "Laplace transform argument must be nonnegative");
  if (params.is_degenerate()) return -c;  // U == 1
  if (params.family.tag == FamilyTag::Gamma) {
    // The m -> 0 limit of the general form; computed directly to avoid the
    // 0/0 cancellation there.
    return -params.nu * std::log1p(c / params.nu);
  }
  return params.rho * std::expm1(-params.m * std::log1p(c / params.nu));
}

double laplace(const PvfParams& params, double c) {
  return std::exp(ln_laplace(params, c));
}

double survival(const PvfParams& params, double h0) { return laplace(params, h0); }

double invert_survival(const PvfParams& params, double s) {
  require(s > 0.0 && s < 1.0, ErrorKind::Validation,
          "survival fraction must lie strictly in (0, 1)");
  const double ln_s = std::log(s);
  if (params.is_degenerate()) return -ln_s;
  if (params.family.tag == FamilyTag::Gamma) {
    // s = (1 + H/nu)^(-nu)  =>  H = nu (s^(-1/nu) - 1).
    return params.nu * std::expm1(-ln_s / params.nu);
  }
  // ln s = rho ((1 + H/nu)^(-m) - 1)  =>  with t = 1 + ln(s)/rho,
  // H = nu (t^(-1/m) - 1).  For m < 0, rho < 0 makes t > 1 always; for
  // compound Poisson (m > 0, rho > 0), t > 0 requires s > e^(-rho) = q — the
  // non-susceptible mass puts a floor under the survival function.
  const double t = 1.0 + ln_s / params.rho;
  if (params.family.tag == FamilyTag::CompoundPoisson) {
    require(t > 0.0, ErrorKind::Validation,
            "survival fraction is at or below the compound-Poisson non-susceptible "
            "floor q=" + std::to_string(params.family.q));
  }
  return params.nu * std::expm1(-std::log(t) / params.m);
}

double ln_trr(const PvfParams& params, double h0) {
  require(h0 >= 0.0, ErrorKind::Validation,
          "cumulative hazard must be nonnegative");
  if (params.is_degenerate() || h0 == 0.0) return 0.0;
  if (params.family.tag == FamilyTag::Gamma) {
    const double x = h0 / params.nu;
    // ln L(2H) - 2 ln L(H) = nu (2 log1p(x) - log1p(2x)).
    return params.nu * (2.0 * std::log1p(x) - std::log1p(2.0 * x));
  }
  const double a1 = -params.m * std::log1p(h0 / params.nu);
  const double a2 = -params.m * std::log1p(2.0 * h0 / params.nu);
  // rho (e^{a2} - 1) - 2 rho (e^{a1} - 1), paired through expm1 so the
  // h0 -> 0 and nu -> infinity limits lose no precision.
  return params.rho * (std::expm1(a2) - 2.0 * std::expm1(a1));
}

double trr(const PvfParams& params, double h0) {
  return std::exp(ln_trr(params, h0));
}

}  // namespace frailhaz
