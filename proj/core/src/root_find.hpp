#pragma once

// Internal bracketed root finder shared by the solver and adjustment modules.
// Not installed.

#include <cmath>
#include <functional>

namespace frailhaz::detail {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

// Illinois-damped regula falsi on [a, b] with f(a), f(b) of opposite sign.
// The Illinois halving of the retained endpoint's function value prevents the
// one-sided stalling of plain false position, giving superlinear convergence
// for the smooth monotone residuals used here.  Stops at |f| < tol_f or
// bracket width < tol_x or max_iter.
inline RootResult illinois_root(const std::function<double(double)>& f,
                                double a, double b, double fa, double fb,
                                double tol_f, double tol_x, int max_iter) {
  if (fa == 0.0) return {a, 0.0, 0};
  if (fb == 0.0) return {b, 0.0, 0};
  int side = 0;
  double x = 0.5 * (a + b);
  double fx = 0.0;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    if (std::abs(b - a) < tol_x) break;
    x = (a * fb - b * fa) / (fb - fa);
    // Keep the iterate strictly interior; degenerate geometry falls back to
    // bisection.
    if (!(x > std::min(a, b) && x < std::max(a, b))) x = 0.5 * (a + b);
    fx = f(x);
    if (std::abs(fx) < tol_f) return {x, fx, iter + 1};
    if ((fx < 0.0) == (fa < 0.0)) {
      a = x;
      fa = fx;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == +1) fa *= 0.5;
      side = +1;
    }
  }
  x = 0.5 * (a + b);
  return {x, f(x), iter};
}

}  // namespace frailhaz::detail
