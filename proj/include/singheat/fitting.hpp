#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace singheat {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares of log(y) against log(x). All values must be > 0.
LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y);

/// Throws ErrorKind::invalid_sweep unless eps has >= min_points entries in
/// (0, 1], strictly decreasing with a constant ratio <= 1/2.
void validate_ladder(std::span<const double> eps, std::size_t min_points = 4);

/// Power-law rate r in err ~ eps^r, i.e. the log-log slope. Values at or
/// below `floor` are clamped to it so exact zeros do not poison the fit.
/// With drop_largest the first (largest-eps) point is excluded.
double fitted_rate(std::span<const double> eps, std::span<const double> values,
                   bool drop_largest = false, double floor = 1e-300);

}  // namespace singheat
