#include "singheat/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "singheat/error.hpp"

namespace singheat {

LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw Error(ErrorKind::insufficient_data, "log-log fit needs >= 2 paired points");
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw Error(ErrorKind::invalid_parameter, "log-log fit needs strictly positive data");
    sx += std::log(x[i]);
    sy += std::log(y[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  if (sxx == 0.0) throw Error(ErrorKind::invalid_parameter, "log-log fit needs distinct x values");
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = x.size();
  return fit;
}

void validate_ladder(std::span<const double> eps, std::size_t min_points) {
  if (eps.size() < min_points) {
    std::ostringstream msg;
    msg << "epsilon ladder needs at least " << min_points << " values, got " << eps.size();
    throw Error(ErrorKind::invalid_sweep, msg.str());
  }
  for (double e : eps) {
    if (!(e > 0.0 && e <= 1.0)) {
      std::ostringstream msg;
      msg << "epsilon " << e << " outside (0, 1]";
      throw Error(ErrorKind::invalid_sweep, msg.str());
    }
  }
  if (eps.size() < 2) return;
  const double ratio = eps[1] / eps[0];
  for (std::size_t i = 1; i < eps.size(); ++i) {
    const double r = eps[i] / eps[i - 1];
    if (!(r <= 0.5 + 1e-12)) {
      std::ostringstream msg;
      msg << "epsilon ladder must decrease by a factor >= 2 per step; " << eps[i - 1] << " -> "
          << eps[i];
      throw Error(ErrorKind::invalid_sweep, msg.str());
    }
    if (std::abs(r - ratio) > 1e-6 * ratio) {
      std::ostringstream msg;
      msg << "epsilon ladder is not geometric: ratio " << r << " differs from " << ratio;
      throw Error(ErrorKind::invalid_sweep, msg.str());
    }
  }
}

double fitted_rate(std::span<const double> eps, std::span<const double> values, bool drop_largest,
                   double floor) {
  const std::size_t skip = drop_largest ? 1 : 0;
  std::vector<double> x(eps.begin() + static_cast<std::ptrdiff_t>(skip), eps.end());
  std::vector<double> y;
  y.reserve(x.size());
  for (std::size_t i = skip; i < values.size(); ++i) y.push_back(std::max(values[i], floor));
  return fit_loglog(x, y).slope;
}

}  // namespace singheat
