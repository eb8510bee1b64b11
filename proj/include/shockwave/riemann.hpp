#pragma once

// Polytropic gas, shock curves and the two-shock Riemann problem for the
// isentropic Euler/Navier-Stokes system in Lagrangian mass coordinates.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "shockwave/errors.hpp"
#include "shockwave/roots.hpp"

namespace shockwave {

/// p(v) = a v^-gamma, mu(v) = v^-alpha (mu0 = 1).
struct GasModel {
  double a = 1.0;
  double gamma = 2.0;
  double alpha = 0.0;

  void validate() const {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("riemann", "pressure coefficient a must be positive");
    if (!(gamma > 1.0) || !std::isfinite(gamma)) throw DomainError("riemann", "gamma must exceed 1");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("riemann", "alpha must be nonnegative");
  }

  static void check_volume(double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("riemann", "specific volume must be positive");
  }

  double pressure(double v) const { return a * std::pow(v, -gamma); }
  double dpressure(double v) const { return -a * gamma * std::pow(v, -gamma - 1.0); }
  double d2pressure(double v) const { return a * gamma * (gamma + 1.0) * std::pow(v, -gamma - 2.0); }

  /// n-th derivative of p.
  double pressure_derivative(int n, double v) const {
    double c = a;
    for (int k = 0; k < n; ++k) c *= -(gamma + k);
    return c * std::pow(v, -gamma - n);
  }

  /// p(x + h) - p(x) without cancellation for small h.
  double pressure_increment(double x, double h) const {
    return a * std::pow(x, -gamma) * std::expm1(-gamma * std::log1p(h / x));
  }

  /// (p(x + h) - p(x)) / h, continuous at h = 0.
  double pressure_slope(double x, double h) const {
    if (std::abs(h) < 1e-300) return dpressure(x);
    return pressure_increment(x, h) / h;
  }

  /// Exponent k = alpha + 1 of the viscous coefficient mu(v)/v = v^-k.
  double visc_exponent() const { return alpha + 1.0; }

  /// v^-(alpha+1).
  double inv_visc(double v) const { return alpha == 0.0 ? 1.0 / v : std::pow(v, -(alpha + 1.0)); }

  /// x^-k - (x + h)^-k without cancellation.
  double inv_visc_drop(double x, double h) const {
    const double k = alpha + 1.0;
    return -std::pow(x, -k) * std::expm1(-k * std::log1p(h / x));
  }
};

struct EndState {
  double v = 1.0;
  double u = 0.0;
};

struct EosValues {
  double p, dp, d2p;
};

struct CharSpeeds {
  double lambda1, lambda2;
};

struct TwoShockData {
  EndState left, mid, right;
  double s1 = 0.0;
  double s2 = 0.0;
  double chi1 = 0.0;
  double chi2 = 0.0;
};

inline EosValues eos_eval(const GasModel& gas, double v) {
  GasModel::check_volume(v);
  return {gas.pressure(v), gas.dpressure(v), gas.d2pressure(v)};
}

inline CharSpeeds char_speeds(const GasModel& gas, double v) {
  GasModel::check_volume(v);
  const double l1 = -std::sqrt(-gas.dpressure(v));
  return {l1, -l1};
}

/// Velocity on the shock locus through `base` at volume v. The 1-shock branch
/// is v < base.v, the 2-shock branch v > base.v; both carry u <= base.u.
inline double hugoniot_u(const GasModel& gas, const EndState& base, double v) {
  GasModel::check_volume(v);
  GasModel::check_volume(base.v);
  // (vb - v)(p(v) - p(vb)) >= 0 on both branches.
  const double radicand = (base.v - v) * gas.pressure_increment(base.v, v - base.v);
  return base.u - std::sqrt(std::max(radicand, 0.0));
}

namespace detail {

/// Volume on the given branch of the shock curve through `base` with velocity u < base.u.
inline double shock_curve_volume(const GasModel& gas, const EndState& base, double u, int family) {
  auto f = [&](double v) { return hugoniot_u(gas, base, v) - u; };
  if (family == 1) {
    // hugoniot_u -> -inf as v -> 0, equals base.u at base.v.
    double lo = 0.5 * base.v;
    int guard = 0;
    while (f(lo) > 0.0) {
      lo *= 0.5;
      if (++guard > 1000) throw BracketError("riemann", "S1 inversion failed", lo, base.v);
    }
    return bracketed_root(f, lo, base.v, "riemann");
  }
  double hi = 2.0 * base.v;
  int guard = 0;
  while (f(hi) > 0.0) {
    hi *= 2.0;
    if (++guard > 1000) throw BracketError("riemann", "S2 inversion failed", base.v, hi);
  }
  return bracketed_root(f, base.v, hi, "riemann");
}

} // namespace detail

/// True when `right` lies strictly inside the two-shock region of `left`.
inline bool in_ss_region(const GasModel& gas, const EndState& left, const EndState& right) {
  GasModel::check_volume(left.v);
  GasModel::check_volume(right.v);
  if (!(right.u < left.u)) return false;
  const double v_s1 = detail::shock_curve_volume(gas, left, right.u, 1);
  const double v_s2 = detail::shock_curve_volume(gas, left, right.u, 2);
  return v_s1 < right.v && right.v < v_s2;
}

/// 1-shock speed between volumes vl (upstream) and vr; negative root of -dp/dv.
inline double shock_speed_1(const GasModel& gas, double vl, double vr) {
  return -std::sqrt(-gas.pressure_increment(vl, vr - vl) / (vr - vl));
}

inline double shock_speed_2(const GasModel& gas, double vl, double vr) {
  return std::sqrt(-gas.pressure_increment(vl, vr - vl) / (vr - vl));
}

struct RhResiduals {
  double mass1, momentum1, mass2, momentum2;
  double scale1, scale2;
};

/// Rankine-Hugoniot residuals of both families together with the magnitude
/// each residual is measured against.
inline RhResiduals rh_residuals(const GasModel& gas, const TwoShockData& d) {
  RhResiduals r{};
  const double dv1 = d.mid.v - d.left.v, du1 = d.mid.u - d.left.u;
  const double dp1 = gas.pressure(d.mid.v) - gas.pressure(d.left.v);
  const double dv2 = d.right.v - d.mid.v, du2 = d.right.u - d.mid.u;
  const double dp2 = gas.pressure(d.right.v) - gas.pressure(d.mid.v);
  r.mass1 = -d.s1 * dv1 - du1;
  r.momentum1 = -d.s1 * du1 + dp1;
  r.mass2 = -d.s2 * dv2 - du2;
  r.momentum2 = -d.s2 * du2 + dp2;
  const double ubig = std::max({1.0, std::abs(d.left.u), std::abs(d.right.u), std::abs(d.mid.u)});
  r.scale1 = std::max(ubig, std::abs(dp1));
  r.scale2 = std::max(ubig, std::abs(dp2));
  return r;
}

/// Strict Lax inequalities for both shocks.
inline bool entropy_admissible(const GasModel& gas, const TwoShockData& d) {
  const double l1m = char_speeds(gas, d.left.v).lambda1;
  const double l1mid = char_speeds(gas, d.mid.v).lambda1;
  const double l2mid = char_speeds(gas, d.mid.v).lambda2;
  const double l2p = char_speeds(gas, d.right.v).lambda2;
  return l1m > d.s1 && d.s1 > l1mid && l2mid > d.s2 && d.s2 > l2p;
}

/// Assembles the two-shock data from a prescribed middle volume.
inline TwoShockData two_shock_from_mid(const GasModel& gas, const EndState& left, double vm, const EndState& right) {
  TwoShockData d;
  d.left = left;
  d.right = right;
  d.mid = {vm, hugoniot_u(gas, left, vm)};
  d.s1 = shock_speed_1(gas, left.v, vm);
  d.s2 = shock_speed_2(gas, vm, right.v);
  d.chi1 = left.v - vm;
  d.chi2 = right.v - vm;
  return d;
}

/// Intermediate state and shock speeds of the two-shock Riemann solution.
inline TwoShockData solve_intermediate(const GasModel& gas, const EndState& left, const EndState& right) {
  gas.validate();
  if (!in_ss_region(gas, left, right)) {
    throw NoTwoShockSolution("right state is not in the two-shock region of the left state");
  }
  auto residual = [&](double vm) {
    const EndState mid{vm, hugoniot_u(gas, left, vm)};
    return hugoniot_u(gas, mid, right.v) - right.u;
  };

  const double vmax = std::min(left.v, right.v);
  const double eps = 1e-8 * vmax;
  const double lo = eps, hi = vmax - eps;
  constexpr int kSubdivisions = 64;
  const double ratio = std::pow(hi / lo, 1.0 / kSubdivisions);
  double a = lo, fa = residual(a);
  double root = -1.0;
  for (int i = 1; i <= kSubdivisions && root < 0.0; ++i) {
    const double b = (i == kSubdivisions) ? hi : lo * std::pow(ratio, i);
    const double fb = residual(b);
    if (fa == 0.0) {
      root = a;
    } else if (std::signbit(fa) != std::signbit(fb)) {
      root = bracketed_root(residual, a, b, "riemann", {1e-14, 200});
    }
    a = b;
    fa = fb;
  }
  if (root < 0.0) {
    throw BracketError("riemann", "no sign change of the intermediate-state residual", lo, hi);
  }

  TwoShockData d = two_shock_from_mid(gas, left, root, right);
  if (!(d.chi1 > 0.0 && d.chi2 > 0.0) || !entropy_admissible(gas, d)) {
    throw NoTwoShockSolution("intermediate state violates the Lax entropy conditions");
  }
  return d;
}

} // namespace shockwave
