#pragma once

#include <utility>
#include <vector>

#include "frailhaz/uncertainty.hpp"

namespace frailhaz {

// Mendelian-randomization extension: converts a frailty-adjusted hazard ratio
// between two instrument levels into a causal per-exposure-unit effect.

struct IvInput {
  SummaryEstimate adjusted_hr;  // causal HR between instrument levels g1, g2
  double b_g = 0.0;             // per-allele effect of instrument on exposure
  double g1 = 0.0;
  double g2 = 0.0;
};

struct IvEstimate {
  double beta_a = 0.0;       // log-HR per exposure unit
  double hr_per_unit = 0.0;  // exp(beta_a)
  double lo = 0.0;
  double hi = 0.0;
};

// beta_a = ln(adjusted_hr) / (b_g (g1 - g2)).  CI endpoints are mapped
// through the same monotone formula and ordered (the direction flips with
// the sign of the denominator).  DegenerateInstrument if
// |b_g (g1 - g2)| < 1e-12.
IvEstimate iv_estimate(const IvInput& input);

struct InstrumentStrength {
  double b_g = 0.0;
  double se = 0.0;
};

// OLS slope of exposure a on instrument g with its standard error; for a
// binary instrument this is the difference in arm means.  Requires n >= 3
// and at least two distinct g values (else SingularDesign).
InstrumentStrength instrument_strength(
    const std::vector<std::pair<double, double>>& exposure_by_g);

}  // namespace frailhaz
