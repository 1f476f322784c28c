#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "frailhaz/errors.hpp"
#include "frailhaz/iv.hpp"
#include "frailhaz/rng.hpp"

using namespace frailhaz;

namespace {

SummaryEstimate log_estimate(double value, double lo, double hi) {
  SummaryEstimate est;
  est.value = value;
  est.lo = lo;
  est.hi = hi;
  est.scale = Scale::Log;
  return est;
}

IvInput make_input(const SummaryEstimate& hr, double b_g, double g1,
                   double g2) {
  IvInput in;
  in.adjusted_hr = hr;
  in.b_g = b_g;
  in.g1 = g1;
  in.g2 = g2;
  return in;
}

}  // namespace

TEST_CASE("worked example: protective HR over a 14.2-unit contrast") {
  // Adjusted HR 0.52 [0.37, 0.77] between instrument levels 14.2 apart with
  // a per-allele exposure effect of -0.172 maps to a harmful per-unit effect.
  const IvEstimate est = iv_estimate(
      make_input(log_estimate(0.52, 0.37, 0.77), -0.172, 14.2, 0.0));
  CHECK(est.beta_a == doctest::Approx(std::log(0.52) / (-0.172 * 14.2))
                          .epsilon(1e-14));
  CHECK(est.hr_per_unit == doctest::Approx(1.307).epsilon(5e-3));
  CHECK(est.lo == doctest::Approx(1.113).epsilon(5e-3));
  CHECK(est.hi == doctest::Approx(1.502).epsilon(5e-3));
}

TEST_CASE("worked example: HR 0.68 maps to 1.17 per unit") {
  const IvEstimate est = iv_estimate(
      make_input(log_estimate(0.68, 0.54, 0.87), -0.172, 14.2, 0.0));
  CHECK(est.hr_per_unit == doctest::Approx(1.171).epsilon(5e-3));
  CHECK(est.lo == doctest::Approx(1.059).epsilon(5e-3));
  CHECK(est.hi == doctest::Approx(1.287).epsilon(5e-3));
}

TEST_CASE("a null hazard ratio stays exactly null") {
  const IvEstimate est =
      iv_estimate(make_input(log_estimate(1.0, 1.0, 1.0), 0.5, 1.0, 0.0));
  CHECK(est.beta_a == 0.0);
  CHECK(est.hr_per_unit == 1.0);
  CHECK(est.lo == 1.0);
  CHECK(est.hi == 1.0);
}

TEST_CASE("scaling the instrument effect rescales the estimate") {
  const SummaryEstimate hr = log_estimate(0.52, 0.37, 0.77);
  const IvEstimate base = iv_estimate(make_input(hr, -0.172, 14.2, 0.0));
  const IvEstimate doubled = iv_estimate(make_input(hr, -0.344, 14.2, 0.0));
  CHECK(doubled.beta_a == doctest::Approx(base.beta_a / 2.0).epsilon(1e-14));
}

TEST_CASE("endpoint order survives a denominator sign flip") {
  const SummaryEstimate hr = log_estimate(0.52, 0.37, 0.77);
  // Same contrast expressed with the levels swapped and the effect negated:
  // the denominator is unchanged, so the estimate must be too.
  const IvEstimate a = iv_estimate(make_input(hr, -0.172, 14.2, 0.0));
  const IvEstimate b = iv_estimate(make_input(hr, 0.172, 0.0, 14.2));
  CHECK(a.beta_a == b.beta_a);
  CHECK(a.lo == b.lo);
  CHECK(a.hi == b.hi);
  CHECK(a.lo < a.hi);

  // Positive denominator: the protective HR stays protective and the
  // endpoint map preserves order directly.
  const IvEstimate c = iv_estimate(make_input(hr, 0.172, 14.2, 0.0));
  CHECK(c.hr_per_unit < 1.0);
  CHECK(c.lo < c.hi);
}

TEST_CASE("degenerate instruments are rejected") {
  const SummaryEstimate hr = log_estimate(0.52, 0.37, 0.77);
  try {
    iv_estimate(make_input(hr, 0.0, 14.2, 0.0));
    CHECK_MESSAGE(false, "expected DegenerateInstrument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateInstrument);
  }
  try {
    iv_estimate(make_input(hr, -0.172, 3.0, 3.0));
    CHECK_MESSAGE(false, "expected DegenerateInstrument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateInstrument);
  }
}

TEST_CASE("iv input validation") {
  SummaryEstimate ident = log_estimate(0.52, 0.37, 0.77);
  ident.scale = Scale::Identity;
  CHECK_THROWS_AS(iv_estimate(make_input(ident, -0.172, 14.2, 0.0)), Error);
  // Malformed interval.
  CHECK_THROWS_AS(
      iv_estimate(make_input(log_estimate(0.52, 0.6, 0.77), -0.172, 14.2, 0.0)),
      Error);
}

TEST_CASE("instrument strength: binary instrument is a difference in means") {
  std::vector<std::pair<double, double>> obs;
  for (int i = 0; i < 4; ++i) obs.emplace_back(0.0, 2.0);
  for (int i = 0; i < 4; ++i) obs.emplace_back(1.0, 3.5);
  const InstrumentStrength fit = instrument_strength(obs);
  CHECK(fit.b_g == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(fit.se <= 1e-12);  // zero residual variance
}

TEST_CASE("instrument strength: recovers a known slope from noisy data") {
  Rng rng = Rng::stream(99, {1});
  std::vector<std::pair<double, double>> obs;
  const int n = 10000;
  obs.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double g = 2.0 * rng.uniform01();
    const double a = 0.5 * g + 0.3 * rng.normal();
    obs.emplace_back(g, a);
  }
  const InstrumentStrength fit = instrument_strength(obs);
  CHECK(fit.se > 0.0);
  CHECK(std::abs(fit.b_g - 0.5) < 4.0 * fit.se);
  CHECK(fit.b_g == doctest::Approx(0.5).epsilon(0.05));
  // se ~ sigma / (sd(g) sqrt(n)) = 0.3 / (0.577 * 100) ~ 0.0052
  CHECK(fit.se == doctest::Approx(0.0052).epsilon(0.15));
}

TEST_CASE("instrument strength: design validation") {
  std::vector<std::pair<double, double>> constant = {
      {1.0, 0.2}, {1.0, 0.5}, {1.0, 0.9}, {1.0, 0.4}};
  try {
    instrument_strength(constant);
    CHECK_MESSAGE(false, "expected SingularDesign");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularDesign);
  }

  std::vector<std::pair<double, double>> tiny = {{0.0, 1.0}, {1.0, 2.0}};
  CHECK_THROWS_AS(instrument_strength(tiny), Error);
}
