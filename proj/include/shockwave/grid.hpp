#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shockwave/errors.hpp"

namespace shockwave {

/// Uniform 1-D grid with n points including both ends.
struct Grid1D {
  double x_lo = 0.0;
  double x_hi = 1.0;
  std::size_t n = 16;

  Grid1D() = default;
  Grid1D(double lo, double hi, std::size_t count) : x_lo(lo), x_hi(hi), n(count) { validate(); }

  void validate() const {
    if (n < 16) throw DomainError("solver", "grid needs at least 16 points");
    if (!(x_hi > x_lo)) throw DomainError("solver", "grid bounds must satisfy x_lo < x_hi");
  }

  double dx() const { return (x_hi - x_lo) / static_cast<double>(n - 1); }
  double x(std::size_t i) const { return x_lo + dx() * static_cast<double>(i); }

  std::vector<double> points() const {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = x(i);
    return xs;
  }
};

/// Composite trapezoid rule on uniform spacing.
inline double trapezoid(std::span<const double> f, double dx) {
  if (f.empty()) return 0.0;
  double sum = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i];
  return sum * dx;
}

/// Running trapezoid integral from the first point; out[0] = 0.
inline std::vector<double> cumulative_trapezoid(std::span<const double> f, double dx) {
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t i = 1; i < f.size(); ++i) out[i] = out[i - 1] + 0.5 * dx * (f[i - 1] + f[i]);
  return out;
}

} // namespace shockwave
