#pragma once

// Independent numerical oracles for the frailty-family Laplace transforms.
//
// These deliberately avoid the library's own code paths: each family's
// Laplace transform is recomputed from its *distributional* definition —
// a density integrated by adaptive Gauss–Kronrod quadrature, or an explicit
// random-sum construction — so agreement is evidence, not tautology.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "frailhaz/rng.hpp"

namespace oracle {

inline double integrate_0_inf(const std::function<double(double)>& f) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-12);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, 15, 1e-12);
}

// --- Gamma ----------------------------------------------------------------
// U ~ Gamma(shape = nu, scale = 1/nu):  E e^{-cU} = (1 + c/nu)^{-nu}.
// (Textbook identity, stated directly; the quadrature oracles below cover the
// families without an elementary closed form.)
inline double gamma_laplace(double nu, double c) {
  return std::pow(1.0 + c / nu, -nu);
}

// --- Inverse Gaussian -------------------------------------------------------
// U ~ IG(mu = 1, lambda = 2 nu) has mean 1, variance 1/(2 nu), and
// E e^{-cU} = exp(2 nu (1 - sqrt(1 + c/nu))).  The oracle integrates the
// density rather than using that closed form.
inline double inverse_gaussian_density(double nu, double u) {
  const double lambda = 2.0 * nu;
  return std::sqrt(lambda / (2.0 * M_PI * u * u * u)) *
         std::exp(-lambda * (u - 1.0) * (u - 1.0) / (2.0 * u));
}

inline double inverse_gaussian_laplace_quadrature(double nu, double c) {
  return integrate_0_inf(
      [=](double u) { return std::exp(-c * u) * inverse_gaussian_density(nu, u); });
}

// --- Positive stable / Hougaard ---------------------------------------------
// Standard positive alpha-stable S (0 < alpha < 1, E e^{-lambda S} =
// exp(-lambda^alpha)) has the Zolotarev/Kanter integral density
//
//   g(s) = (alpha/(1-alpha)) s^{-1/(1-alpha)} (1/pi)
//          * Int_0^pi A(phi) exp(-s^{-alpha/(1-alpha)} A(phi)) dphi,
//   A(phi) = [ sin(alpha phi)^alpha sin((1-alpha) phi)^(1-alpha) / sin(phi)
//            ]^(1/(1-alpha)).
inline double stable_kanter_a(double alpha, double phi) {
  const double base = std::pow(std::sin(alpha * phi), alpha) *
                      std::pow(std::sin((1.0 - alpha) * phi), 1.0 - alpha) /
                      std::sin(phi);
  return std::pow(base, 1.0 / (1.0 - alpha));
}

inline double stable_density(double alpha, double s) {
  if (s <= 0.0) return 0.0;
  const double y = std::pow(s, -alpha / (1.0 - alpha));
  const double integral = integrate(
      [=](double phi) {
        const double a = stable_kanter_a(alpha, phi);
        const double expo = a * y;
        return expo > 700.0 ? 0.0 : a * std::exp(-expo);
      },
      0.0, M_PI);
  return alpha / (1.0 - alpha) * std::pow(s, -1.0 / (1.0 - alpha)) *
         integral / M_PI;
}

// The Hougaard frailty with shape m in (-1, 0) and scale nu is an
// exponentially tilted, rescaled positive stable: with alpha = -m,
// k = (nu/alpha)^(1/alpha) / nu and tilt nu,
//
//   f_U(u) = exp(nu/alpha) e^{-nu u} g(u/k) / k,
//
// which integrates to 1 because E e^{-nu k S} = exp(-(k nu)^alpha)
// = exp(-nu/alpha).
inline double hougaard_density(double m, double nu, double u) {
  const double alpha = -m;
  const double k = std::pow(nu / alpha, 1.0 / alpha) / nu;
  return std::exp(nu / alpha - nu * u) * stable_density(alpha, u / k) / k;
}

inline double hougaard_laplace_quadrature(double m, double nu, double c) {
  return integrate_0_inf(
      [=](double u) { return std::exp(-c * u) * hougaard_density(m, nu, u); });
}

// --- Compound Poisson -------------------------------------------------------
// U = sum_{i=1}^{N} X_i with N ~ Poisson(rho), X_i ~ Gamma(shape m,
// scale 1/nu), rho = -ln q, m = nu/rho:
//   E e^{-cU} = exp(rho ((1 + c/nu)^{-m} - 1)),   P(U = 0) = e^{-rho} = q.
// The oracle estimates E e^{-cU} by simulating the random sum directly.
inline int poisson_draw(double lambda, frailhaz::Rng& rng) {
  // Knuth product method; fine for the moderate lambda used in tests.
  const double limit = std::exp(-lambda);
  int n = 0;
  double prod = rng.uniform01();
  while (prod > limit) {
    ++n;
    prod *= rng.uniform01();
  }
  return n;
}

struct MonteCarloEstimate {
  double mean = 0.0;
  double se = 0.0;
};

inline MonteCarloEstimate compound_poisson_laplace_mc(double q, double nu,
                                                      double c, long n_draws,
                                                      std::uint64_t seed) {
  const double rho = -std::log(q);
  const double m = nu / rho;
  frailhaz::Rng rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (long i = 0; i < n_draws; ++i) {
    const int n_jumps = poisson_draw(rho, rng);
    double u = 0.0;
    for (int j = 0; j < n_jumps; ++j) u += rng.gamma(m, 1.0 / nu);
    const double value = std::exp(-c * u);
    sum += value;
    sum_sq += value * value;
  }
  MonteCarloEstimate est;
  est.mean = sum / static_cast<double>(n_draws);
  const double var =
      (sum_sq / static_cast<double>(n_draws) - est.mean * est.mean);
  est.se = std::sqrt(std::max(0.0, var) / static_cast<double>(n_draws));
  return est;
}

}  // namespace oracle
