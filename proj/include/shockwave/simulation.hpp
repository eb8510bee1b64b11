#pragma once

// End-to-end experiment: Riemann data -> profiles -> composite wave ->
// perturbed initial data -> shifts -> time integration with diagnostics.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "shockwave/composite.hpp"
#include "shockwave/diagnostics.hpp"
#include "shockwave/errors.hpp"
#include "shockwave/profile.hpp"
#include "shockwave/riemann.hpp"
#include "shockwave/solver.hpp"

namespace shockwave {

/// Gaussian bump amplitude * exp(-((x - center) / width)^2) added to v or u.
struct Perturbation {
  char target = 'v';
  double amplitude = 0.0;
  double center = 0.0;
  double width = 1.0;

  double operator()(double x) const {
    const double z = (x - center) / width;
    return amplitude * std::exp(-z * z);
  }
  double mass() const { return amplitude * width * std::sqrt(std::numbers::pi); }
};

/// Riemann data either as two end states or constructively through v_m.
struct WaveSetup {
  GasModel gas;
  EndState left{2.0, 0.0};
  EndState right{2.0, 0.0};
  std::optional<double> v_m;  ///< constructive form: right.u is derived
  bool single = false;        ///< only the 1-shock from left to (v_m, u_m)
  double beta = 40.0;
  ProfileOptions profile;
};

struct GridSpec {
  bool automatic = true;
  double x_lo = 0.0, x_hi = 0.0;
  std::size_t n = 4000;
  std::optional<double> dx;  ///< automatic mode: spacing instead of a point count
};

struct TimeSpec {
  double T = 50.0;
  double record_dt = 0.0;  ///< 0 selects T / 200
  std::vector<double> snapshot_times;
};

struct SimulationConfig {
  WaveSetup wave;
  std::vector<Perturbation> perturbations;
  GridSpec grid;
  TimeSpec time;
  SchemeConfig scheme;
};

/// Two-shock data for a setup; in single mode right == mid and s2 = chi2 = 0.
inline TwoShockData resolve_riemann(const WaveSetup& w) {
  w.gas.validate();
  if (w.single) {
    if (!w.v_m) throw ConfigError("single-shock mode needs riemann.v_m");
    const double vm = *w.v_m;
    if (!(vm > 0.0 && vm < w.left.v)) throw ConfigError("single-shock mode needs 0 < v_m < v_minus");
    TwoShockData d;
    d.left = w.left;
    d.mid = {vm, hugoniot_u(w.gas, w.left, vm)};
    d.right = d.mid;
    d.s1 = shock_speed_1(w.gas, w.left.v, vm);
    d.chi1 = w.left.v - vm;
    return d;
  }
  if (w.v_m) {
    const double vm = *w.v_m;
    if (!(vm > 0.0 && vm < std::min(w.left.v, w.right.v))) {
      throw ConfigError("constructive Riemann data needs 0 < v_m < min(v_minus, v_plus)");
    }
    const EndState mid{vm, hugoniot_u(w.gas, w.left, vm)};
    const EndState right{w.right.v, hugoniot_u(w.gas, mid, w.right.v)};
    return solve_intermediate(w.gas, w.left, right);
  }
  return solve_intermediate(w.gas, w.left, w.right);
}

inline CompositeWave build_composite(const WaveSetup& w, const TwoShockData& d) {
  if (w.single) return CompositeWave::single(ShockProfile::from_two_shock(w.gas, d, 1, w.profile));
  return CompositeWave::two_shock(w.gas, d, w.beta, w.profile);
}

/// Domain containing [s1 T - margin, beta + s2 T + margin] and every
/// perturbation out to eight widths, margin = 30 / (smallest decay rate).
inline Grid1D auto_grid(const CompositeWave& cw, double T, std::span<const Perturbation> perts, const GridSpec& spec) {
  const double margin = 30.0 / cw.min_decay_rate();
  double lo = 0.0, hi = 0.0;
  if (cw.has_wave1()) {
    lo = std::min(lo, cw.wave1().speed() * T);
    hi = std::max(hi, 0.0);
  }
  if (cw.has_wave2()) {
    lo = std::min(lo, cw.beta());
    hi = std::max(hi, cw.beta() + cw.wave2().speed() * T);
  }
  for (const auto& p : perts) {
    lo = std::min(lo, p.center - 8.0 * p.width);
    hi = std::max(hi, p.center + 8.0 * p.width);
  }
  lo -= margin;
  hi += margin;
  std::size_t n = spec.n;
  if (spec.dx) n = static_cast<std::size_t>(std::ceil((hi - lo) / *spec.dx)) + 1;
  return Grid1D(lo, hi, n);
}

inline FieldState initial_data(const CompositeWave& cw0, const Grid1D& grid, std::span<const Perturbation> perts) {
  FieldState s;
  s.v.resize(grid.n);
  s.u.resize(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    const auto c = cw0.eval(x, 0.0);
    s.v[i] = c.V;
    s.u[i] = c.U;
    for (const auto& p : perts) (p.target == 'v' ? s.v[i] : s.u[i]) += p(x);
  }
  return s;
}

struct SimulationResult {
  TwoShockData data;
  bool single = false;
  Grid1D grid;
  CompositeWave composite;  ///< shifted
  ShiftInputs shift_inputs;
  Shifts shifts;
  DiagnosticsSeries series;
  std::vector<FieldState> snapshots;
  FieldState final_state;
  std::size_t steps = 0;
};

using RecordObserver = std::function<void(const FieldState&, const DiagnosticsRecord&)>;

inline SimulationResult run_simulation(const SimulationConfig& cfg, const RecordObserver& observer = {}) {
  cfg.scheme.validate();
  if (!(cfg.time.T > 0.0)) throw ConfigError("time.T must be positive");
  for (const auto& p : cfg.perturbations) {
    if (!(p.width > 0.0)) throw ConfigError("perturbation widths must be positive");
    if (p.target != 'v' && p.target != 'u') throw ConfigError("perturbation target must be v or u");
  }

  const TwoShockData data = resolve_riemann(cfg.wave);
  const CompositeWave cw0 = build_composite(cfg.wave, data);
  const Grid1D grid = cfg.grid.automatic ? auto_grid(cw0, cfg.time.T, cfg.perturbations, cfg.grid)
                                         : Grid1D(cfg.grid.x_lo, cfg.grid.x_hi, cfg.grid.n);

  FieldState state = initial_data(cw0, grid, cfg.perturbations);
  const ShiftInputs si = compute_shift_inputs(state.v, state.u, cw0, grid);
  Shifts shifts;
  if (cfg.wave.single) {
    shifts = solve_single_shift(si, cw0.wave1());
  } else {
    shifts = solve_shifts(si, data);
    check_separation(cw0.beta(), shifts);
  }
  const CompositeWave cw = cw0.with_shifts(shifts);

  SimulationResult res{data, cfg.wave.single, grid, cw, si, shifts, {}, {}, {}, 0};
  const double T = cfg.time.T;
  const double record_dt = cfg.time.record_dt > 0.0 ? cfg.time.record_dt : T / 200.0;
  std::vector<double> snaps = cfg.time.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::remove_if(snaps.begin(), snaps.end(), [&](double s) { return s < 0.0 || s > T; }), snaps.end());

  const double eps = 1e-9 * std::max(1.0, T);
  std::size_t record_index = 0, snap_index = 0;
  auto next_record = [&] { return std::min(T, static_cast<double>(record_index) * record_dt); };
  auto handle_events = [&] {
    if (std::abs(state.t - next_record()) <= eps) {
      auto rec = compute_record(state, cw, grid);
      if (observer) observer(state, rec);
      res.series.push_back(rec);
      ++record_index;
    }
    while (snap_index < snaps.size() && std::abs(state.t - snaps[snap_index]) <= eps) {
      res.snapshots.push_back(state);
      ++snap_index;
    }
  };

  Rk4Stepper stepper(cfg.wave.gas, grid);
  handle_events();
  while (state.t < T - eps) {
    double target = next_record();
    if (snap_index < snaps.size()) target = std::min(target, snaps[snap_index]);
    const double dt = std::min(stable_dt(cfg.wave.gas, state, grid, cfg.scheme), target - state.t);
    stepper.step(state, dt);
    if (std::abs(state.t - target) <= eps) state.t = target;
    ++res.steps;
    handle_events();
  }
  res.final_state = std::move(state);
  return res;
}

} // namespace shockwave
