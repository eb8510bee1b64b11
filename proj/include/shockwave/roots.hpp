#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "shockwave/errors.hpp"

namespace shockwave {

struct RootOptions {
  double tol = 1e-14;
  int max_iter = 200;
};

/// Bracketed root of a continuous scalar function. Each iteration takes the
/// secant point of the current bracket when it falls well inside, otherwise
/// bisects. Requires f(lo) and f(hi) of opposite sign (or one exactly zero).
template <class F>
double bracketed_root(F&& f, double lo, double hi, const std::string& stage,
                      RootOptions opts = {}) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi) || !std::isfinite(flo) || !std::isfinite(fhi)) {
    throw BracketError(stage, "root not bracketed", lo, hi);
  }
  bool last_was_secant = false;
  for (int it = 0; it < opts.max_iter; ++it) {
    const double width = hi - lo;
    const double scale = std::max(std::abs(lo), std::abs(hi));
    if (std::abs(width) <= std::max(opts.tol, 4.0 * std::numeric_limits<double>::epsilon() * scale)) {
      break;
    }
    double x = lo - flo * width / (fhi - flo);
    // Alternate so a one-sided secant sequence still halves the bracket.
    const double margin = 0.05 * std::abs(width);
    if (last_was_secant || !std::isfinite(x) || x <= std::min(lo, hi) + margin ||
        x >= std::max(lo, hi) - margin) {
      x = 0.5 * (lo + hi);
      last_was_secant = false;
    } else {
      last_was_secant = true;
    }
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (std::signbit(fx) == std::signbit(flo)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
  }
  return std::abs(flo) < std::abs(fhi) ? lo : hi;
}

} // namespace shockwave
