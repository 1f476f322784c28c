#pragma once

// Internal statistical helpers.  Not installed.

#include <algorithm>
#include <cmath>
#include <vector>

namespace frailhaz::detail {

// Phi^{-1}(0.975), the two-sided 95% normal quantile used to convert CI
// half-widths back to standard deviations.
inline constexpr double kZ975 = 1.959963984540054;

// Empirical quantile with linear interpolation between order statistics
// (the "type 7" convention: h = (n-1)p).  `sorted` must be ascending and
// nonempty.
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = static_cast<double>(n - 1) * p;
  const auto i = static_cast<std::size_t>(std::floor(h));
  if (i + 1 >= n) return sorted[n - 1];
  const double g = h - static_cast<double>(i);
  return sorted[i] + g * (sorted[i + 1] - sorted[i]);
}

inline double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return quantile_sorted(values, 0.5);
}

}  // namespace frailhaz::detail
