#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "shockwave/errors.hpp"

namespace shockwave {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  std::size_t count = 0;
};

/// Ordinary least squares y = slope * x + intercept.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.count = x.size();
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss += r * r;
  }
  f.rms_residual = std::sqrt(ss / n);
  return f;
}

struct RateFit {
  double rate = 0.0;          ///< -d ln y / dt
  double rms_residual = 0.0;  ///< of ln y about the fitted line
  std::size_t count = 0;
};

/// Exponential decay rate of a positive series restricted to t in [t_lo, t_hi].
inline RateFit fit_exponential_rate(std::span<const double> t, std::span<const double> y, double t_lo,
                                    double t_hi) {
  if (t.size() != y.size()) throw std::invalid_argument("fit_exponential_rate: size mismatch");
  std::vector<double> tt, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (!(y[i] > 0.0)) throw DomainError("diagnostics", "nonpositive value in rate-fit window");
    tt.push_back(t[i]);
    ly.push_back(std::log(y[i]));
  }
  if (tt.size() < 5) throw DomainError("diagnostics", "rate fit needs at least 5 points in the window");
  const LineFit lf = fit_line(tt, ly);
  return {-lf.slope, lf.rms_residual, lf.count};
}

inline RateFit fit_exponential_rate(std::span<const double> t, std::span<const double> y) {
  return fit_exponential_rate(t, y, -INFINITY, INFINITY);
}

} // namespace shockwave
