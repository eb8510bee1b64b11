#pragma once

// Two-shock composite wave
//   V(x,t) = V1(x - s1 t + beta1) + V2(x - s2 t - beta + beta2) - v_m
// (U likewise), the shifts that remove the initial excess mass, and the
// interaction term W that measures how far the sum of two exact profiles is
// from solving the viscous system.

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shockwave/errors.hpp"
#include "shockwave/grid.hpp"
#include "shockwave/profile.hpp"
#include "shockwave/riemann.hpp"

namespace shockwave {

struct CompositeSample {
  double V, U, Vx, Ux, H, W;
  double Vt;      ///< analytic time derivative -s1 V1' - s2 V2'
  double d1, d2;  ///< V1 - v_m, V2 - v_m
};

struct ShiftInputs {
  double I01 = 0.0;
  double I02 = 0.0;
};

struct Shifts {
  double beta1 = 0.0;
  double beta2 = 0.0;
};

/// p(vm + d1 + d2) + p(vm) - p(vm + d1) - p(vm + d2), accurate when the
/// result is far below the size of the individual terms.
inline double pressure_mixed_difference(const GasModel& gas, double vm, double d1, double d2) {
  if (d1 == 0.0 || d2 == 0.0) return 0.0;
  const double big = std::max(std::abs(d1), std::abs(d2));
  if (big < 1e-5 * vm) {
    // Double Taylor series in (d1, d2) through fourth order.
    const double p2 = gas.pressure_derivative(2, vm);
    const double p3 = gas.pressure_derivative(3, vm);
    const double p4 = gas.pressure_derivative(4, vm);
    return d1 * d2 * (p2 + 0.5 * p3 * (d1 + d2) + p4 * ((d1 * d1 + d2 * d2) / 6.0 + 0.25 * d1 * d2));
  }
  // Difference along the larger offset of increments along the smaller one.
  const double large = std::abs(d1) >= std::abs(d2) ? d1 : d2;
  const double small = std::abs(d1) >= std::abs(d2) ? d2 : d1;
  return gas.pressure_increment(vm + large, small) - gas.pressure_increment(vm, small);
}

class CompositeWave {
public:
  CompositeWave(std::optional<ShockProfile> wave1, std::optional<ShockProfile> wave2, EndState mid, double beta,
                Shifts shifts = {})
      : mid_(mid), beta_(beta), shifts_(shifts) {
    if (!wave1 && !wave2) throw DomainError("composite", "composite wave needs at least one profile");
    if (wave1) wave1_ = std::make_shared<const ShockProfile>(std::move(*wave1));
    if (wave2) wave2_ = std::make_shared<const ShockProfile>(std::move(*wave2));
    gas_ = wave1_ ? wave1_->gas() : wave2_->gas();
    if (wave1_ && (wave1_->family() != 1 || wave1_->state_right().v != mid.v))
      throw DomainError("composite", "wave1 must be a 1-shock ending at the middle state");
    if (wave2_ && (wave2_->family() != 2 || wave2_->state_left().v != mid.v))
      throw DomainError("composite", "wave2 must be a 2-shock starting at the middle state");
    if (wave1_ && wave2_ && !(beta > 0.0)) throw DomainError("composite", "separation beta must be positive");
  }

  /// Unshifted composite of the two profiles of a two-shock datum.
  static CompositeWave two_shock(const GasModel& gas, const TwoShockData& d, double beta,
                                 const ProfileOptions& opts = {}) {
    return CompositeWave(ShockProfile::from_two_shock(gas, d, 1, opts), ShockProfile::from_two_shock(gas, d, 2, opts),
                         d.mid, beta);
  }

  /// Degenerate composite carrying only a 1-shock; the right far field is its end state.
  static CompositeWave single(ShockProfile wave1) {
    const EndState mid = wave1.state_right();
    return CompositeWave(std::move(wave1), std::nullopt, mid, 0.0);
  }

  CompositeWave with_shifts(Shifts shifts) const {
    CompositeWave c = *this;
    c.shifts_ = shifts;
    return c;
  }

  CompositeWave with_beta(double beta) const {
    CompositeWave c = *this;
    c.beta_ = beta;
    return c;
  }

  /// Same composite with the second profile replaced by its constant middle state.
  CompositeWave without_wave2() const {
    CompositeWave c = *this;
    c.wave2_.reset();
    return c;
  }

  CompositeWave without_wave1() const {
    CompositeWave c = *this;
    c.wave1_.reset();
    return c;
  }

  CompositeSample eval(double x, double t) const {
    double d1 = 0.0, d2 = 0.0, V1x = 0.0, V2x = 0.0, s1 = 0.0, s2 = 0.0;
    if (wave1_) {
      s1 = wave1_->speed();
      const auto p = wave1_->eval(x - s1 * t + shifts_.beta1);
      d1 = p.dR;
      V1x = p.Vx;
    }
    if (wave2_) {
      s2 = wave2_->speed();
      const auto p = wave2_->eval(x - s2 * t - beta_ + shifts_.beta2);
      d2 = p.dL;
      V2x = p.Vx;
    }
    const double vm = mid_.v;
    const double V1 = vm + d1, V2 = vm + d2;
    CompositeSample c{};
    c.d1 = d1;
    c.d2 = d2;
    c.V = vm + d1 + d2;
    if (!(c.V > 0.0)) throw DomainError("composite", "composite volume is not positive");
    c.U = mid_.u - s1 * d1 - s2 * d2;
    c.Vx = V1x + V2x;
    const double U1x = -s1 * V1x, U2x = -s2 * V2x;
    c.Ux = U1x + U2x;
    c.H = c.U - gas_.inv_visc(c.V) * c.Vx;
    c.Vt = -s1 * V1x - s2 * V2x;
    // U1x (V1^-k - V^-k) + U2x (V2^-k - V^-k) + mixed pressure difference.
    const double visc = U1x * gas_.inv_visc_drop(V1, d2) + U2x * gas_.inv_visc_drop(V2, d1);
    c.W = visc + pressure_mixed_difference(gas_, vm, d1, d2);
    return c;
  }

  const GasModel& gas() const { return gas_; }
  const EndState& mid() const { return mid_; }
  double beta() const { return beta_; }
  const Shifts& shifts() const { return shifts_; }
  bool has_wave1() const { return static_cast<bool>(wave1_); }
  bool has_wave2() const { return static_cast<bool>(wave2_); }
  const ShockProfile& wave1() const { return *wave1_; }
  const ShockProfile& wave2() const { return *wave2_; }

  EndState far_left() const { return wave1_ ? wave1_->state_left() : mid_; }
  EndState far_right() const { return wave2_ ? wave2_->state_right() : mid_; }

  /// Decay rates of the composite toward its outer far-field states.
  double outer_rate_left() const { return wave1_ ? wave1_->c_minus() : wave2_->c_minus(); }
  double outer_rate_right() const { return wave2_ ? wave2_->c_plus() : wave1_->c_plus(); }

  /// Smallest decay rate over every tail of the composite.
  double min_decay_rate() const {
    double c = INFINITY;
    if (wave1_) c = std::min({c, wave1_->c_minus(), wave1_->c_plus()});
    if (wave2_) c = std::min({c, wave2_->c_minus(), wave2_->c_plus()});
    return c;
  }

private:
  GasModel gas_;
  std::shared_ptr<const ShockProfile> wave1_, wave2_;
  EndState mid_;
  double beta_ = 0.0;
  Shifts shifts_;
};

inline CompositeSample eval_composite(const CompositeWave& cw, double x, double t) { return cw.eval(x, t); }

/// Composite fields sampled on every grid point at time t.
struct CompositeFields {
  std::vector<double> V, U, Vx, Ux, H, W, Vt;
};

inline CompositeFields sample_composite(const CompositeWave& cw, const Grid1D& grid, double t) {
  CompositeFields f;
  for (auto* a : {&f.V, &f.U, &f.Vx, &f.Ux, &f.H, &f.W, &f.Vt}) a->resize(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const auto c = cw.eval(grid.x(i), t);
    f.V[i] = c.V;
    f.U[i] = c.U;
    f.Vx[i] = c.Vx;
    f.Ux[i] = c.Ux;
    f.H[i] = c.H;
    f.W[i] = c.W;
    f.Vt[i] = c.Vt;
  }
  return f;
}

/// Excess mass of (v0, u0) over the composite evaluated at t = 0, by the
/// trapezoid rule plus exponential tails beyond the grid ends.
inline ShiftInputs compute_shift_inputs(std::span<const double> v0, std::span<const double> u0,
                                        const CompositeWave& cw, const Grid1D& grid,
                                        double boundary_tol = 1e-12) {
  if (v0.size() != grid.n || u0.size() != grid.n) throw DomainError("composite", "field size does not match grid");
  std::vector<double> dv(grid.n), du(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const auto c = cw.eval(grid.x(i), 0.0);
    dv[i] = v0[i] - c.V;
    du[i] = u0[i] - c.U;
  }
  const double boundary = std::max({std::abs(dv.front()), std::abs(dv.back()), std::abs(du.front()), std::abs(du.back())});
  if (boundary > boundary_tol) {
    throw TruncationError("composite", "initial perturbation has not decayed at the grid boundary", boundary);
  }
  const double cl = cw.outer_rate_left(), cr = cw.outer_rate_right();
  ShiftInputs si;
  si.I01 = trapezoid(dv, grid.dx()) + dv.front() / cl + dv.back() / cr;
  si.I02 = trapezoid(du, grid.dx()) + du.front() / cl + du.back() / cr;
  return si;
}

/// Shifts that make the excess mass over the shifted composite vanish.
inline Shifts solve_shifts(const ShiftInputs& si, const TwoShockData& ts) {
  if (!(ts.chi1 > 0.0 && ts.chi2 > 0.0)) throw DegenerateWave("composite", "shift solve needs two nonzero strengths");
  if (!(ts.s1 < 0.0 && ts.s2 > 0.0)) throw DomainError("composite", "shift solve needs s1 < 0 < s2");
  const double ds = ts.s1 - ts.s2;
  return {(si.I01 * ts.s2 + si.I02) / (ts.chi1 * ds), (si.I01 * ts.s1 + si.I02) / (ts.chi2 * ds)};
}

/// Shift of a lone 1-shock from the v-excess alone.
inline Shifts solve_single_shift(const ShiftInputs& si, const ShockProfile& wave1) {
  // I1 = I01 + beta1 (v_- - v_m) = 0.
  return {-si.I01 / wave1.strength(), 0.0};
}

/// The separation must dominate the shifts: beta > 3 max(|beta1|, |beta2|).
inline void check_separation(double beta, const Shifts& sh) {
  const double need = 3.0 * std::max(std::abs(sh.beta1), std::abs(sh.beta2));
  if (!(beta > need)) {
    throw ConfigError("separation beta = " + std::to_string(beta) + " does not exceed 3 max(|beta1|,|beta2|) = " +
                      std::to_string(need) + "; enlarge beta");
  }
}

struct WDecayConstants {
  double c_prime;  ///< predicted time rate
  double C_minus;  ///< predicted separation rate
};

inline WDecayConstants predicted_w_decay(const TwoShockData& ts, const ShockProfile& p1, const ShockProfile& p2) {
  const double c1 = p1.c_plus();   // wave 1 toward v_m
  const double c2 = p2.c_minus();  // wave 2 toward v_m
  return {std::min(-c1 * ts.s1, c2 * ts.s2), std::min(c1, c2) / 6.0};
}

struct InteractionNorm {
  double norm = 0.0;
  double boundary = 0.0;  ///< max |W| at the two grid ends
  bool truncated = false;
};

inline InteractionNorm interaction_norm(const CompositeWave& cw, double t, const Grid1D& grid,
                                        double boundary_tol = 1e-14) {
  std::vector<double> w2(grid.n);
  double wl = 0.0, wr = 0.0;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double w = cw.eval(grid.x(i), t).W;
    w2[i] = w * w;
    if (i == 0) wl = std::abs(w);
    if (i + 1 == grid.n) wr = std::abs(w);
  }
  InteractionNorm r;
  r.norm = std::sqrt(trapezoid(w2, grid.dx()));
  r.boundary = std::max(wl, wr);
  r.truncated = r.boundary > boundary_tol;
  return r;
}

} // namespace shockwave
