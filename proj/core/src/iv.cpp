#include "frailhaz/iv.hpp"

#include <algorithm>
#include <cmath>

#include "frailhaz/errors.hpp"

namespace frailhaz {

IvEstimate iv_estimate(const IvInput& input) {
  input.adjusted_hr.validate();
  require(input.adjusted_hr.scale == Scale::Log, ErrorKind::Validation,
          "the hazard-ratio estimate must be on the log (ratio) scale");
  const double denom = input.b_g * (input.g1 - input.g2);
  require(std::isfinite(denom), ErrorKind::Validation,
          "instrument parameters must be finite");
  if (std::abs(denom) < 1e-12) {
    throw_error(ErrorKind::DegenerateInstrument,
                "b_g * (g1 - g2) is (numerically) zero; the instrument "
                "carries no exposure contrast");
  }

  IvEstimate est;
  est.beta_a = std::log(input.adjusted_hr.value) / denom;
  est.hr_per_unit = std::exp(est.beta_a);
  // The endpoint map is monotone in the HR, but its direction flips with the
  // sign of the denominator — map both endpoints, then order.
  const double end1 = std::exp(std::log(input.adjusted_hr.lo) / denom);
  const double end2 = std::exp(std::log(input.adjusted_hr.hi) / denom);
  est.lo = std::min(end1, end2);
  est.hi = std::max(end1, end2);
  return est;
}

InstrumentStrength instrument_strength(
    const std::vector<std::pair<double, double>>& exposure_by_g) {
  const auto n = static_cast<double>(exposure_by_g.size());
  require(exposure_by_g.size() >= 3, ErrorKind::Validation,
          "instrument-strength regression needs at least 3 observations");

  double g_mean = 0.0;
  double a_mean = 0.0;
  for (const auto& [g, a] : exposure_by_g) {
    require(std::isfinite(g) && std::isfinite(a), ErrorKind::Validation,
            "observations must be finite");
    g_mean += g;
    a_mean += a;
  }
  g_mean /= n;
  a_mean /= n;

  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [g, a] : exposure_by_g) {
    sxx += (g - g_mean) * (g - g_mean);
    sxy += (g - g_mean) * (a - a_mean);
  }
  if (!(sxx > 0.0)) {
    throw_error(ErrorKind::SingularDesign,
                "all instrument values are equal; the slope is not "
                "identified");
  }

  InstrumentStrength out;
  out.b_g = sxy / sxx;
  double rss = 0.0;
  for (const auto& [g, a] : exposure_by_g) {
    const double resid = (a - a_mean) - out.b_g * (g - g_mean);
    rss += resid * resid;
  }
  // Guard tiny negative round-off before the square root.
  const double sigma2 = std::max(0.0, rss / (n - 2.0));
  out.se = std::sqrt(sigma2 / sxx);
  return out;
}

}  // namespace frailhaz
