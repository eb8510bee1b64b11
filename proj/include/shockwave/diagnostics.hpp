#pragma once

// Monitored quantities of a perturbed composite-wave run: anti-derivative
// perturbations, Sobolev norms, the nonlinear source terms, the two energy
// functionals and the pointwise inequalities the energy method relies on.
// Composite-wave quantities always come from analytic profile evaluation;
// derivatives of the numerical solution use the solver's central stencils.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "shockwave/composite.hpp"
#include "shockwave/errors.hpp"
#include "shockwave/fit.hpp"
#include "shockwave/grid.hpp"
#include "shockwave/solver.hpp"

namespace shockwave {

struct PerturbationFields {
  std::vector<double> phi, psi, Psi;        ///< anti-derivatives of v - V, u - U, h - H
  std::vector<double> phi_x, psi_x, Psi_x;  ///< v - V, u - U, h - H
  std::vector<double> Psi_closed;           ///< Psi from the exact integral of v^-(alpha+1) v_x
};

/// Anti-derivatives from the left grid end, where the perturbation must have decayed.
inline PerturbationFields antiderivatives(const GasModel& gas, const FieldState& state, const CompositeFields& cf,
                                          const Grid1D& grid, double boundary_tol = 1e-12) {
  const std::size_t n = grid.n;
  PerturbationFields pf;
  pf.phi_x.resize(n);
  pf.psi_x.resize(n);
  pf.Psi_x.resize(n);
  const auto h = effective_velocity(gas, state, grid);
  for (std::size_t i = 0; i < n; ++i) {
    pf.phi_x[i] = state.v[i] - cf.V[i];
    pf.psi_x[i] = state.u[i] - cf.U[i];
    pf.Psi_x[i] = h[i] - cf.H[i];
  }
  const double left = std::max(std::abs(pf.phi_x.front()), std::abs(pf.psi_x.front()));
  if (left > boundary_tol) {
    throw TruncationError("diagnostics", "perturbation has not decayed at the left boundary", left);
  }
  const double dx = grid.dx();
  pf.phi = cumulative_trapezoid(pf.phi_x, dx);
  pf.psi = cumulative_trapezoid(pf.psi_x, dx);
  pf.Psi = cumulative_trapezoid(pf.Psi_x, dx);
  pf.Psi_closed.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = state.v[i], V = cf.V[i];
    const double q = gas.alpha == 0.0 ? -std::log(v / V)
                                      : (std::pow(v, -gas.alpha) - std::pow(V, -gas.alpha)) / gas.alpha;
    pf.Psi_closed[i] = pf.psi[i] + q;
  }
  return pf;
}

inline PerturbationFields antiderivatives(const FieldState& state, const CompositeWave& cw, const Grid1D& grid) {
  return antiderivatives(cw.gas(), state, sample_composite(cw, grid, state.t), grid);
}

struct SobolevNorms {
  double l2 = 0.0, linf = 0.0, h1 = 0.0, h2 = 0.0;
};

inline std::vector<double> second_derivative(std::span<const double> f, double dx) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 4) return d;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2 * f[i] + f[i - 1]) / (dx * dx);
  d[0] = (2 * f[0] - 5 * f[1] + 4 * f[2] - f[3]) / (dx * dx);
  d[n - 1] = (2 * f[n - 1] - 5 * f[n - 2] + 4 * f[n - 3] - f[n - 4]) / (dx * dx);
  return d;
}

inline double l2_norm(std::span<const double> f, double dx) {
  std::vector<double> sq(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) sq[i] = f[i] * f[i];
  return std::sqrt(trapezoid(sq, dx));
}

inline SobolevNorms sobolev_norms(std::span<const double> f, double dx) {
  if (f.size() < 5) throw DomainError("diagnostics", "Sobolev norms need at least 5 samples");
  SobolevNorms s;
  s.l2 = l2_norm(f, dx);
  for (double x : f) s.linf = std::max(s.linf, std::abs(x));
  const double d1 = l2_norm(derivative(f, dx), dx);
  const double d2 = l2_norm(second_derivative(f, dx), dx);
  s.h1 = std::sqrt(s.l2 * s.l2 + d1 * d1);
  s.h2 = std::sqrt(s.l2 * s.l2 + d1 * d1 + d2 * d2);
  return s;
}

struct PerturbationTerms {
  std::vector<double> f, F, G, pvV, W;
};

inline PerturbationTerms perturbation_terms(const GasModel& gas, const FieldState& state, const CompositeFields& cf,
                                            const PerturbationFields& pf, const Grid1D& grid) {
  const std::size_t n = grid.n;
  const double k = gas.visc_exponent();
  const auto ux = derivative(state.u, grid.dx());
  const auto vx = derivative(state.v, grid.dx());
  PerturbationTerms t;
  for (auto* a : {&t.f, &t.F, &t.G, &t.pvV, &t.W}) a->resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = state.v[i], V = cf.V[i];
    const double iv = gas.inv_visc(v), iV = gas.inv_visc(V);
    const double phi_x = pf.phi_x[i];
    const double psi_xx = ux[i] - cf.Ux[i];
    const double phi_xx = vx[i] - cf.Vx[i];
    const double dp = gas.dpressure(V);
    t.pvV[i] = gas.pressure_increment(V, phi_x) - dp * phi_x;
    t.f[i] = -dp - k * cf.Ux[i] * iV / V;
    t.F[i] = ux[i] * iv - cf.Ux[i] * iV - psi_xx * iV + k * cf.Ux[i] * phi_x * iV / V - t.pvV[i];
    t.G[i] = vx[i] * iv - cf.Vx[i] * iV - phi_xx * iV + k * cf.Vx[i] * phi_x * iV / V;
    t.W[i] = cf.W[i];
  }
  return t;
}

struct EnergyFunctionals {
  double E0 = 0.0;  ///< integral of phi^2 - Psi^2 / p'(V)
  double E1 = 0.0;  ///< integral of phi_x^2 - Psi_x^2 / p'(V)
};

inline EnergyFunctionals energy_functionals(const GasModel& gas, const PerturbationFields& pf,
                                            const CompositeFields& cf, double dx) {
  const std::size_t n = pf.phi.size();
  std::vector<double> e0(n), e1(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dp = gas.dpressure(cf.V[i]);
    e0[i] = pf.phi[i] * pf.phi[i] - pf.Psi[i] * pf.Psi[i] / dp;
    e1[i] = pf.phi_x[i] * pf.phi_x[i] - pf.Psi_x[i] * pf.Psi_x[i] / dp;
  }
  return {trapezoid(e0, dx), trapezoid(e1, dx)};
}

struct InequalityReport {
  /// max of min(-s1, s2) |(1/p'(V))_x| - (1/p'(V))_t
  double steepening = -INFINITY;
  /// max of -max{p'(v-), p'(v+)} - (f + (alpha+1) U_x / (2 V^(alpha+2)))
  double f_bound = -INFINITY;
  double worst() const { return std::max(steepening, f_bound); }
};

inline InequalityReport pointwise_inequality_report(const CompositeWave& cw, const Grid1D& grid, double t) {
  const GasModel& gas = cw.gas();
  const double k = gas.visc_exponent();
  double speed = INFINITY;
  if (cw.has_wave1()) speed = std::min(speed, -cw.wave1().speed());
  if (cw.has_wave2()) speed = std::min(speed, cw.wave2().speed());
  const double floor_f = -std::max(gas.dpressure(cw.far_left().v), gas.dpressure(cw.far_right().v));
  InequalityReport r;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const auto c = cw.eval(grid.x(i), t);
    const double dp = gas.dpressure(c.V), d2p = gas.d2pressure(c.V);
    const double q_t = -d2p * c.Vt / (dp * dp);
    const double q_x = -d2p * c.Vx / (dp * dp);
    r.steepening = std::max(r.steepening, speed * std::abs(q_x) - q_t);
    const double lhs = -dp - 0.5 * k * c.Ux * gas.inv_visc(c.V) / c.V;
    r.f_bound = std::max(r.f_bound, floor_f - lhs);
  }
  return r;
}

struct DiagnosticsRecord {
  double t = 0.0;
  double sup_v = 0.0, sup_u = 0.0;
  double l2_phi = 0.0, h1_phi = 0.0, h2_phi = 0.0;
  double l2_psi = 0.0, h1_psi = 0.0, h2_psi = 0.0;
  double l2_Psi = 0.0, l2_Psi_x = 0.0;
  double l2_W = 0.0;
  double E0 = 0.0, E1 = 0.0;
  double min_f = 0.0;
  double ineq_violation = 0.0;
  // Reported alongside the series, not part of the CSV.
  double pvV_ratio = 0.0;       ///< max |p(v|V)| / phi_x^2
  double Psi_closed_err = 0.0;  ///< max |Psi - Psi_closed|
  double v_min = 0.0, v_max = 0.0;
};

inline DiagnosticsRecord compute_record(const FieldState& state, const CompositeWave& cw, const Grid1D& grid,
                                        double boundary_tol = 1e-12) {
  const GasModel& gas = cw.gas();
  const double dx = grid.dx();
  const auto cf = sample_composite(cw, grid, state.t);
  const auto pf = antiderivatives(gas, state, cf, grid, boundary_tol);
  const auto terms = perturbation_terms(gas, state, cf, pf, grid);
  DiagnosticsRecord r;
  r.t = state.t;
  for (std::size_t i = 0; i < grid.n; ++i) {
    r.sup_v = std::max(r.sup_v, std::abs(pf.phi_x[i]));
    r.sup_u = std::max(r.sup_u, std::abs(pf.psi_x[i]));
  }
  const auto nphi = sobolev_norms(pf.phi, dx);
  const auto npsi = sobolev_norms(pf.psi, dx);
  r.l2_phi = nphi.l2;
  r.h1_phi = nphi.h1;
  r.h2_phi = nphi.h2;
  r.l2_psi = npsi.l2;
  r.h1_psi = npsi.h1;
  r.h2_psi = npsi.h2;
  r.l2_Psi = l2_norm(pf.Psi, dx);
  r.l2_Psi_x = l2_norm(pf.Psi_x, dx);
  r.l2_W = l2_norm(cf.W, dx);
  const auto e = energy_functionals(gas, pf, cf, dx);
  r.E0 = e.E0;
  r.E1 = e.E1;
  r.min_f = *std::min_element(terms.f.begin(), terms.f.end());
  r.ineq_violation = pointwise_inequality_report(cw, grid, state.t).worst();
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double px2 = pf.phi_x[i] * pf.phi_x[i];
    if (px2 > 1e-16) r.pvV_ratio = std::max(r.pvV_ratio, std::abs(terms.pvV[i]) / px2);
    r.Psi_closed_err = std::max(r.Psi_closed_err, std::abs(pf.Psi[i] - pf.Psi_closed[i]));
  }
  const auto [lo, hi] = std::minmax_element(state.v.begin(), state.v.end());
  r.v_min = *lo;
  r.v_max = *hi;
  return r;
}

using DiagnosticsSeries = std::vector<DiagnosticsRecord>;

} // namespace shockwave
