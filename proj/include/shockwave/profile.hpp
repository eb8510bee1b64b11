#pragma once

// Viscous shock profiles: traveling waves (V, U)(x - s t) of the Lagrangian
// Navier-Stokes system connecting two states on a shock curve.
//
// Once integrated, the profile equations reduce to the scalar ODE
//   V' = g(V) = -V^(alpha+1) [ s^2 (V - vL) + p(V) - p(vL) ] / s,
//   U  = uL - s (V - vL).
// The bracket vanishes at both end states, so it is rewritten around the
// nearer end state e as (V - e)(s^2 + (p(V) - p(e)) / (V - e)). Each half of
// the profile is integrated and stored as an offset from its own end state;
// this keeps the exponentially small tails accurate to full relative precision,
// which the interaction term of a composite wave depends on.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "shockwave/errors.hpp"
#include "shockwave/fit.hpp"
#include "shockwave/riemann.hpp"

namespace shockwave {

/// dV/dxi evaluated directly from the integrated form with the left state as reference.
inline double profile_rhs(const GasModel& gas, double s, double vL, double V) {
  if (!(V > 0.0)) throw DomainError("profile", "profile volume must be positive");
  const double bracket = s * s * (V - vL) + gas.pressure(V) - gas.pressure(vL);
  return -std::pow(V, gas.visc_exponent()) * bracket / s;
}

/// Same right-hand side written around an end state `base` of the wave, with
/// y = V - base. Exact at y = 0 and free of cancellation as y -> 0.
inline double profile_rhs_offset(const GasModel& gas, double s, double base, double y) {
  const double V = base + y;
  if (!(V > 0.0)) throw DomainError("profile", "profile volume must be positive");
  return -std::pow(V, gas.visc_exponent()) * y * (s * s + gas.pressure_slope(base, y)) / s;
}

/// Linearization rate |g'(v_end)| of the profile ODE at an end state.
inline double tail_rate(const GasModel& gas, double s, double v_end) {
  return std::pow(v_end, gas.visc_exponent()) * std::abs(s * s + gas.dpressure(v_end)) / std::abs(s);
}

struct DecayRates {
  double c_minus;  ///< xi -> -inf
  double c_plus;   ///< xi -> +inf
};

inline DecayRates decay_rates(const GasModel& gas, double s, double vL, double vR) {
  if (vL == vR || s == 0.0) throw DegenerateWave("profile", "zero-strength wave has no decay rate");
  const DecayRates r{tail_rate(gas, s, vL), tail_rate(gas, s, vR)};
  if (!(r.c_minus > 0.0 && r.c_plus > 0.0)) throw DegenerateWave("profile", "nonpositive decay rate");
  return r;
}

inline DecayRates decay_rates(const GasModel& gas, const TwoShockData& d, int family) {
  return family == 1 ? decay_rates(gas, d.s1, d.left.v, d.mid.v) : decay_rates(gas, d.s2, d.mid.v, d.right.v);
}

struct ProfileOptions {
  double tol = 1e-10;       ///< end-state gap at which the analytic tail takes over
  double xi_max = 200.0;
  double rel_tol = 1e-12;
  double abs_tol = 1e-30;
  double max_step = 0.025;  ///< caps table spacing for the cubic interpolant
};

struct ProfileSample {
  double V, U, Vx, Ux;
  double dL;  ///< V - vL
  double dR;  ///< V - vR
};

class ShockProfile {
public:
  /// Integrates the wave from stateL (xi -> -inf) to stateR (xi -> +inf) with
  /// speed s, normalized so that V(0) is the midpoint of the two volumes.
  static ShockProfile integrate(const GasModel& gas, int family, EndState stateL, EndState stateR, double s,
                                const ProfileOptions& opts = {}) {
    gas.validate();
    if (family != 1 && family != 2) throw DomainError("profile", "family must be 1 or 2");
    if (!(opts.tol > 0.0) || !(opts.xi_max > 0.0)) throw DomainError("profile", "tol and xi_max must be positive");
    if (stateL.v == stateR.v) throw DegenerateWave("profile", "zero-strength shock profile");
    if (family == 1 && !(stateR.v < stateL.v && s < 0.0)) throw DomainError("profile", "1-shock needs vR < vL and s < 0");
    if (family == 2 && !(stateR.v > stateL.v && s > 0.0)) throw DomainError("profile", "2-shock needs vR > vL and s > 0");

    ShockProfile p;
    p.gas_ = gas;
    p.family_ = family;
    p.left_ = stateL;
    p.right_ = stateR;
    p.s_ = s;
    const auto rates = decay_rates(gas, s, stateL.v, stateR.v);
    p.c_minus_ = rates.c_minus;
    p.c_plus_ = rates.c_plus;

    const double half = 0.5 * (stateR.v - stateL.v);
    p.right_branch_ = p.integrate_branch(stateR.v, -half, +1.0, opts);
    p.left_branch_ = p.integrate_branch(stateL.v, half, -1.0, opts);
    return p;
  }

  static ShockProfile from_two_shock(const GasModel& gas, const TwoShockData& d, int family,
                                     const ProfileOptions& opts = {}) {
    return family == 1 ? integrate(gas, 1, d.left, d.mid, d.s1, opts) : integrate(gas, 2, d.mid, d.right, d.s2, opts);
  }

  ProfileSample eval(double xi) const {
    const bool right = xi >= 0.0;
    const Branch& b = right ? right_branch_ : left_branch_;
    const double y = b.offset(xi, right ? -c_plus_ : c_minus_);
    ProfileSample out{};
    out.V = b.base + y;
    if (right) {
      out.dR = y;
      out.dL = y + (right_.v - left_.v);
    } else {
      out.dL = y;
      out.dR = y + (left_.v - right_.v);
    }
    out.Vx = profile_rhs_offset(gas_, s_, b.base, y);
    out.U = left_.u - s_ * out.dL;
    out.Ux = -s_ * out.Vx;
    return out;
  }

  int family() const { return family_; }
  const GasModel& gas() const { return gas_; }
  const EndState& state_left() const { return left_; }
  const EndState& state_right() const { return right_; }
  double speed() const { return s_; }
  double strength() const { return std::abs(left_.v - right_.v); }
  double c_minus() const { return c_minus_; }
  double c_plus() const { return c_plus_; }
  bool truncated() const { return truncated_; }

  /// Table end positions and signed gaps V - v_end there.
  double xi_first() const { return left_branch_.xi.front(); }
  double xi_last() const { return right_branch_.xi.back(); }
  double gap_left() const { return left_branch_.y.front(); }
  double gap_right() const { return right_branch_.y.back(); }

  /// All table nodes as (xi, V), xi ascending.
  std::vector<std::pair<double, double>> table() const {
    std::vector<std::pair<double, double>> t;
    t.reserve(left_branch_.xi.size() + right_branch_.xi.size());
    for (std::size_t i = 0; i < left_branch_.xi.size(); ++i) {
      t.emplace_back(left_branch_.xi[i], left_branch_.base + left_branch_.y[i]);
    }
    for (std::size_t i = 1; i < right_branch_.xi.size(); ++i) {
      t.emplace_back(right_branch_.xi[i], right_branch_.base + right_branch_.y[i]);
    }
    return t;
  }

  /// Integrated nodes of one half as (xi, V - v_end); side -1 is the left half.
  std::vector<std::pair<double, double>> half_table(int side) const {
    const Branch& b = side < 0 ? left_branch_ : right_branch_;
    std::vector<std::pair<double, double>> t;
    for (std::size_t i = 0; i < b.xi.size(); ++i) t.emplace_back(b.xi[i], b.y[i]);
    return t;
  }

private:
  struct Branch {
    double base = 0.0;
    std::vector<double> xi, y, slope;

    // Monotone cubic Hermite on exact node slopes; exponential tails outside.
    double offset(double x, double tail_rate_signed) const {
      if (x <= xi.front()) {
        if (x == xi.front()) return y.front();
        return y.front() * std::exp(tail_rate_signed * (x - xi.front()));
      }
      if (x >= xi.back()) {
        if (x == xi.back()) return y.back();
        return y.back() * std::exp(tail_rate_signed * (x - xi.back()));
      }
      const auto it = std::upper_bound(xi.begin(), xi.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - xi.begin()) - 1;
      const double h = xi[i + 1] - xi[i];
      const double t = (x - xi[i]) / h;
      const double delta = (y[i + 1] - y[i]) / h;
      double m0 = slope[i], m1 = slope[i + 1];
      if (delta == 0.0) {
        m0 = m1 = 0.0;
      } else {
        double a = std::max(m0 / delta, 0.0), b = std::max(m1 / delta, 0.0);
        const double r2 = a * a + b * b;
        if (r2 > 9.0) {
          const double tau = 3.0 / std::sqrt(r2);
          a *= tau;
          b *= tau;
        }
        m0 = a * delta;
        m1 = b * delta;
      }
      const double t2 = t * t, t3 = t2 * t;
      return (2 * t3 - 3 * t2 + 1) * y[i] + (t3 - 2 * t2 + t) * h * m0 + (-2 * t3 + 3 * t2) * y[i + 1] +
             (t3 - t2) * h * m1;
    }
  };

  // Integrates y = V - base from y0 at xi = 0 in direction dir until |y| < tol.
  Branch integrate_branch(double base, double y0, double dir, const ProfileOptions& opts) {
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 1>;
    auto rhs = [&](const State& x, State& dxdt, double /*eta*/) {
      dxdt[0] = dir * profile_rhs_offset(gas_, s_, base, x[0]);
    };
    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(opts.abs_tol, opts.rel_tol);

    std::vector<double> eta{0.0}, ys{y0};
    State x{y0};
    double t = 0.0;
    double dt = std::min(1e-3, opts.max_step);
    int failures = 0;
    while (std::abs(x[0]) >= opts.tol) {
      if (t >= opts.xi_max) {
        truncated_ = true;
        break;
      }
      dt = std::min({dt, opts.max_step, opts.xi_max - t + 1e-12});
      const double prev = x[0];
      if (stepper.try_step(rhs, x, t, dt) == odeint::success) {
        failures = 0;
        if (std::signbit(x[0]) != std::signbit(prev) || std::abs(x[0]) >= std::abs(prev)) {
          throw IntegrationError("profile", "non-monotone step while integrating the shock profile");
        }
        eta.push_back(t);
        ys.push_back(x[0]);
      } else if (++failures > 1000) {
        throw IntegrationError("profile", "step size control failed");
      }
    }

    Branch b;
    b.base = base;
    const std::size_t n = eta.size();
    b.xi.resize(n);
    b.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Store with xi ascending.
      const std::size_t j = dir > 0 ? i : n - 1 - i;
      b.xi[i] = dir * eta[j];
      b.y[i] = ys[j];
    }
    b.slope.resize(n);
    for (std::size_t i = 0; i < n; ++i) b.slope[i] = profile_rhs_offset(gas_, s_, base, b.y[i]);
    return b;
  }

  GasModel gas_;
  int family_ = 1;
  EndState left_, right_;
  double s_ = 0.0;
  double c_minus_ = 0.0, c_plus_ = 0.0;
  bool truncated_ = false;
  Branch left_branch_, right_branch_;
};

inline ShockProfile integrate_profile(const TwoShockData& d, int family, const GasModel& gas,
                                      double tol = 1e-10, double xi_max = 200.0) {
  ProfileOptions opts;
  opts.tol = tol;
  opts.xi_max = xi_max;
  return ShockProfile::from_two_shock(gas, d, family, opts);
}

inline ProfileSample eval_profile(const ShockProfile& p, double xi) { return p.eval(xi); }

/// Measured exponential rate of the integrated half-profile toward an end
/// state: least-squares slope of ln|V - v_end| over nodes with gap in
/// [gap_lo, gap_hi]. side -1 measures the xi -> -inf tail.
inline double measured_tail_rate(const ShockProfile& p, int side, double gap_lo = 1e-9, double gap_hi = 1e-4) {
  std::vector<double> xs, ls;
  for (const auto& [xi, y] : p.half_table(side)) {
    const double g = std::abs(y);
    if (g >= gap_lo && g <= gap_hi) {
      xs.push_back(xi);
      ls.push_back(std::log(g));
    }
  }
  if (xs.size() < 5) throw DomainError("profile", "too few tail nodes to fit a rate");
  return std::abs(fit_line(xs, ls).slope);
}

/// L2 norm over [xi_lo, xi_hi] of the momentum residual
///   -s U' + p(V)' - (U' / V^(alpha+1))'
/// with the profile sampled at spacing h and second-order central differences
/// (viscous flux at half points, arithmetic-mean volume).
inline double steady_residual_norm(const ShockProfile& p, double h, double xi_lo, double xi_hi) {
  const GasModel& gas = p.gas();
  const double s = p.speed();
  const auto n = static_cast<std::size_t>(std::llround((xi_hi - xi_lo) / h)) + 1;
  std::vector<double> V(n), U(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto smp = p.eval(xi_lo + h * static_cast<double>(i));
    V[i] = smp.V;
    U[i] = smp.U;
  }
  auto flux = [&](std::size_t i) {  // at i + 1/2
    return (U[i + 1] - U[i]) / h * gas.inv_visc(0.5 * (V[i] + V[i + 1]));
  };
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double r = -s * (U[i + 1] - U[i - 1]) / (2 * h) + (gas.pressure(V[i + 1]) - gas.pressure(V[i - 1])) / (2 * h) -
                     (flux(i) - flux(i - 1)) / h;
    sum += r * r * h;
  }
  return std::sqrt(sum);
}

} // namespace shockwave
