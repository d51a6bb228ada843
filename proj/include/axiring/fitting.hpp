#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "axiring/errors.hpp"

namespace axiring {

// Least-squares line in (log t, log v) over a time window.
struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;  // RMS of the log-log residuals
  double t_min = 0.0;
  double t_max = 0.0;
};

inline PowerLawFit fit_power_law(
    std::span<const std::pair<double, double>> series, double t_min,
    double t_max) {
  if (!(t_min < t_max))
    throw FitError("fit_power_law: window requires t_min < t_max");
  std::vector<double> xs, ys;
  for (const auto& [t, v] : series) {
    if (t < t_min || t > t_max) continue;
    if (!(t > 0.0) || !(v > 0.0))
      throw FitError("fit_power_law: samples must have t > 0 and value > 0");
    xs.push_back(std::log(t));
    ys.push_back(std::log(v));
  }
  if (xs.size() < 8)
    throw FitError("fit_power_law: needs at least 8 samples in the window");

  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw FitError("fit_power_law: degenerate time window");
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (slope * xs[i] + intercept);
    rss += e * e;
  }
  PowerLawFit fit;
  fit.exponent = slope;
  fit.prefactor = std::exp(intercept);
  fit.residual = std::sqrt(rss / n);
  fit.t_min = t_min;
  fit.t_max = t_max;
  return fit;
}

}  // namespace axiring
