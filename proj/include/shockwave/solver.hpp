#pragma once

// Method-of-lines integrator for the Lagrangian isentropic Navier-Stokes system
//   v_t = u_x,   u_t = -p(v)_x + (u_x / v^(alpha+1))_x
// on a uniform grid with pinned (far-field Dirichlet) end points.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "shockwave/errors.hpp"
#include "shockwave/grid.hpp"
#include "shockwave/riemann.hpp"

namespace shockwave {

struct FieldState {
  double t = 0.0;
  std::vector<double> v;
  std::vector<double> u;
};

struct SchemeConfig {
  double cfl_hyperbolic = 0.4;
  double cfl_viscous = 0.4;

  void validate() const {
    auto ok = [](double c) { return c > 0.0 && c <= 0.9; };
    if (!ok(cfl_hyperbolic) || !ok(cfl_viscous)) throw ConfigError("cfl factors must lie in (0, 0.9]");
  }
};

/// Positivity loss or a non-finite value; carries the offending state.
class StateError : public Error {
public:
  StateError(const std::string& what, FieldState snapshot)
      : Error("solver", what), snapshot_(std::move(snapshot)) {}
  const FieldState& snapshot() const noexcept { return snapshot_; }

private:
  FieldState snapshot_;
};

struct Rhs {
  std::vector<double> dv, du;
};

namespace detail {

inline void check_state(const FieldState& s, const Grid1D& grid) {
  if (s.v.size() != grid.n || s.u.size() != grid.n) throw DomainError("solver", "state size does not match grid");
  for (std::size_t i = 0; i < grid.n; ++i) {
    if (!(s.v[i] > 0.0) || !std::isfinite(s.v[i]) || !std::isfinite(s.u[i])) {
      throw StateError("nonpositive or non-finite specific volume at x = " + std::to_string(grid.x(i)), s);
    }
  }
}

// Writes the semidiscrete right-hand side of (v, u) into (dv, du); `p` and
// `sigma` are scratch of size n and n - 1.
inline void rhs_into(const GasModel& gas, std::span<const double> v, std::span<const double> u, double dx,
                     std::span<double> dv, std::span<double> du, std::vector<double>& p,
                     std::vector<double>& sigma) {
  const std::size_t n = v.size();
  p.resize(n);
  sigma.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) p[i] = gas.pressure(v[i]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    sigma[i] = (u[i + 1] - u[i]) / dx * gas.inv_visc(0.5 * (v[i] + v[i + 1]));
  }
  const double inv2dx = 0.5 / dx;
  dv[0] = du[0] = dv[n - 1] = du[n - 1] = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    dv[i] = (u[i + 1] - u[i - 1]) * inv2dx;
    du[i] = -(p[i + 1] - p[i - 1]) * inv2dx + (sigma[i] - sigma[i - 1]) / dx;
  }
}

} // namespace detail

inline Rhs semidiscrete_rhs(const GasModel& gas, const FieldState& state, const Grid1D& grid) {
  detail::check_state(state, grid);
  Rhs r{std::vector<double>(grid.n), std::vector<double>(grid.n)};
  std::vector<double> p, sigma;
  detail::rhs_into(gas, state.v, state.u, grid.dx(), r.dv, r.du, p, sigma);
  return r;
}

/// Explicit step limit: min(cfl_h dx / max|lambda|, cfl_v dx^2 min v^(alpha+1) / 2).
inline double stable_dt(const GasModel& gas, const FieldState& state, const Grid1D& grid,
                        const SchemeConfig& scheme = {}) {
  const double vmin = *std::min_element(state.v.begin(), state.v.end());
  GasModel::check_volume(vmin);
  const double dx = grid.dx();
  // |lambda| = sqrt(-p'(v)) is largest at the smallest volume.
  const double lam = std::sqrt(-gas.dpressure(vmin));
  const double hyper = scheme.cfl_hyperbolic * dx / lam;
  const double visc = scheme.cfl_viscous * dx * dx * std::pow(vmin, gas.visc_exponent()) / 2.0;
  return std::min(hyper, visc);
}

/// Classical four-stage Runge-Kutta with reusable stage storage.
class Rk4Stepper {
public:
  Rk4Stepper(GasModel gas, Grid1D grid) : gas_(gas), grid_(grid) {
    for (auto* a : {&kv_, &ku_, &acc_v_, &acc_u_, &tmp_v_, &tmp_u_}) a->assign(grid.n, 0.0);
  }

  void step(FieldState& s, double dt) {
    const std::size_t n = grid_.n;
    const double dx = grid_.dx();
    acc_v_ = s.v;
    acc_u_ = s.u;
    static constexpr double kStageDt[3] = {0.5, 0.5, 1.0};
    static constexpr double kWeight[4] = {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0};
    tmp_v_ = s.v;
    tmp_u_ = s.u;
    for (int stage = 0; stage < 4; ++stage) {
      detail::rhs_into(gas_, tmp_v_, tmp_u_, dx, kv_, ku_, p_, sigma_);
      for (std::size_t i = 0; i < n; ++i) {
        acc_v_[i] += kWeight[stage] * dt * kv_[i];
        acc_u_[i] += kWeight[stage] * dt * ku_[i];
      }
      if (stage < 3) {
        const double c = kStageDt[stage] * dt;
        for (std::size_t i = 0; i < n; ++i) {
          tmp_v_[i] = s.v[i] + c * kv_[i];
          tmp_u_[i] = s.u[i] + c * ku_[i];
        }
      }
    }
    s.v.swap(acc_v_);
    s.u.swap(acc_u_);
    s.t += dt;
    detail::check_state(s, grid_);
  }

  const Grid1D& grid() const { return grid_; }

private:
  GasModel gas_;
  Grid1D grid_;
  std::vector<double> kv_, ku_, acc_v_, acc_u_, tmp_v_, tmp_u_, p_, sigma_;
};

inline FieldState rk4_step(const GasModel& gas, const FieldState& state, double dt, const Grid1D& grid) {
  detail::check_state(state, grid);
  FieldState next = state;
  Rk4Stepper(gas, grid).step(next, dt);
  return next;
}

/// Central first derivative; second-order one-sided at the ends.
inline std::vector<double> derivative(std::span<const double> f, double dx) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 3) return d;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2 * dx);
  d[0] = (-3 * f[0] + 4 * f[1] - f[2]) / (2 * dx);
  d[n - 1] = (3 * f[n - 1] - 4 * f[n - 2] + f[n - 3]) / (2 * dx);
  return d;
}

/// h = u - v^-(alpha+1) v_x.
inline std::vector<double> effective_velocity(const GasModel& gas, const FieldState& state, double dx) {
  const auto vx = derivative(state.v, dx);
  std::vector<double> h(state.v.size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = state.u[i] - gas.inv_visc(state.v[i]) * vx[i];
  return h;
}

inline std::vector<double> effective_velocity(const GasModel& gas, const FieldState& state, const Grid1D& grid) {
  return effective_velocity(gas, state, grid.dx());
}

} // namespace shockwave
