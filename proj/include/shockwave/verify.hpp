#pragma once

// Verification suites. Each suite runs one or more numbered acceptance
// criteria and reports one line per criterion: name, measured values,
// thresholds and PASS/FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "shockwave/composite.hpp"
#include "shockwave/diagnostics.hpp"
#include "shockwave/errors.hpp"
#include "shockwave/fit.hpp"
#include "shockwave/parallel.hpp"
#include "shockwave/profile.hpp"
#include "shockwave/riemann.hpp"
#include "shockwave/simulation.hpp"

namespace shockwave {

struct CriterionResult {
  int id = 0;
  std::string name;
  std::string measured;
  std::string threshold;
  bool pass = false;

  std::string line() const {
    return fmt::format("criterion {} {} | measured: {} | threshold: {} | {}", id, name, measured, threshold,
                       pass ? "PASS" : "FAIL");
  }
};

using SuiteReport = std::vector<CriterionResult>;

namespace tolerances {
inline constexpr int kRiemannSamples = 200;
inline constexpr double kRiemannResidual = 1e-12;
inline constexpr double kRiemannSeconds = 5.0;

inline constexpr double kOrderTarget = 2.0;
inline constexpr double kOrderBand = 0.3;
inline constexpr double kCanonicalCPlus = 1.443376;
inline constexpr double kCanonicalCMinus = 1.154701;
inline constexpr double kTailRateRel = 0.02;
inline constexpr double kProfileSeconds = 10.0;

inline constexpr int kShiftSamples = 50;
inline constexpr double kShiftMass = 1e-8;
inline constexpr double kShiftSeconds = 30.0;

inline constexpr double kWBeta = 40.0;
inline constexpr double kWBetaFar = 60.0;
inline constexpr double kWHorizon = 10.0;
inline constexpr double kWRateFactor = 0.9;
inline constexpr double kCanonicalCPrime = 1.25;
inline constexpr double kWSeconds = 60.0;

inline constexpr double kConvergenceT = 5.0;
inline constexpr double kSpeedRel = 0.01;
inline constexpr double kConvergenceSeconds = 120.0;

inline constexpr double kStabilityT = 50.0;
inline constexpr double kEarlyWindow = 5.0;
inline constexpr double kSupRatio = 0.2;
inline constexpr double kStabilitySeconds = 600.0;
inline constexpr double kEnergyFactor = 3.0;
inline constexpr double kIneqViolation = 1e-12;
inline constexpr double kPsiOrder = 1.7;
} // namespace tolerances

namespace detail {

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline GasModel canonical_gas() { return {1.0, 2.0, 0.0}; }

inline TwoShockData canonical_data() {
  const GasModel gas = canonical_gas();
  const EndState left{2.0, 0.0};
  const EndState mid{1.0, hugoniot_u(gas, left, 1.0)};
  const EndState right{2.0, hugoniot_u(gas, mid, 2.0)};
  return solve_intermediate(gas, left, right);
}

/// Least-squares slope of log(err) against log(h).
inline double convergence_order(const std::vector<double>& h, const std::vector<double>& err) {
  std::vector<double> lh, le;
  for (std::size_t i = 0; i < h.size(); ++i) {
    lh.push_back(std::log(h[i]));
    le.push_back(std::log(err[i]));
  }
  return fit_line(lh, le).slope;
}

inline CriterionResult failed(int id, std::string name, const std::exception& e, std::string threshold) {
  return {id, std::move(name), fmt::format("error: {}", e.what()), std::move(threshold), false};
}

} // namespace detail

/// Criterion 1: randomized two-shock data solve to Rankine-Hugoniot residuals
/// below 1e-12 of their scale with strict Lax inequalities.
inline SuiteReport verify_riemann(std::uint64_t seed = 20240611) {
  using namespace tolerances;
  const std::string name = "riemann_exactness";
  const std::string threshold =
      fmt::format("residual/scale<={:g}, strict entropy, runtime_s<{:g}", kRiemannResidual, kRiemannSeconds);
  detail::Stopwatch clock;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> gamma_d(1.1, 3.0), a_d(0.5, 2.0), chi_d(0.0, 3.0), vm_d(0.2, 2.0),
      u_d(-2.0, 2.0);
  double worst = 0.0, worst_vm_err = 0.0;
  int entropy_fail = 0;
  for (int k = 0; k < kRiemannSamples; ++k) {
    const GasModel gas{a_d(rng), gamma_d(rng), 0.0};
    const double vm = vm_d(rng);
    double chi1 = chi_d(rng), chi2 = chi_d(rng);
    chi1 = std::max(chi1, 1e-3);
    chi2 = std::max(chi2, 1e-3);
    const EndState left{vm + chi1, u_d(rng)};
    const EndState mid{vm, hugoniot_u(gas, left, vm)};
    const EndState right{vm + chi2, hugoniot_u(gas, mid, vm + chi2)};
    try {
      const auto d = solve_intermediate(gas, left, right);
      const auto r = rh_residuals(gas, d);
      worst = std::max({worst, std::abs(r.mass1) / r.scale1, std::abs(r.momentum1) / r.scale1,
                        std::abs(r.mass2) / r.scale2, std::abs(r.momentum2) / r.scale2});
      worst_vm_err = std::max(worst_vm_err, std::abs(d.mid.v - vm) / vm);
      if (!entropy_admissible(gas, d)) ++entropy_fail;
    } catch (const Error&) {
      ++entropy_fail;
      worst = INFINITY;
    }
  }
  const double t = clock.seconds();
  const bool pass = worst <= kRiemannResidual && entropy_fail == 0 && t < kRiemannSeconds;
  return {{1, name,
           fmt::format("samples={}, max_residual={:.3e}, max_vm_rel_err={:.3e}, entropy_failures={}, runtime_s={:.2f}",
                       kRiemannSamples, worst, worst_vm_err, entropy_fail, t),
           threshold, pass}};
}

/// Criterion 2: steady residual order and tail rates of the canonical 1-shock profile.
inline SuiteReport verify_profile() {
  using namespace tolerances;
  const std::string name = "profile_fidelity";
  const std::string threshold = fmt::format("|order-{:g}|<={:g}, tail rate rel_err<={:g}, runtime_s<{:g}",
                                            kOrderTarget, kOrderBand, kTailRateRel, kProfileSeconds);
  detail::Stopwatch clock;
  try {
    const GasModel gas = detail::canonical_gas();
    const auto d = detail::canonical_data();
    const auto p = ShockProfile::from_two_shock(gas, d, 1);
    std::vector<double> hs{0.2, 0.1, 0.05, 0.025}, res;
    for (double h : hs) res.push_back(steady_residual_norm(p, h, -20.0, 20.0));
    const double order = detail::convergence_order(hs, res);
    const double cp = measured_tail_rate(p, +1), cm = measured_tail_rate(p, -1);
    const double ep = std::abs(cp / kCanonicalCPlus - 1.0), em = std::abs(cm / kCanonicalCMinus - 1.0);
    const double t = clock.seconds();
    const bool pass = std::abs(order - kOrderTarget) <= kOrderBand && ep <= kTailRateRel && em <= kTailRateRel &&
                      t < kProfileSeconds;
    return {{2, name,
             fmt::format("order={:.4f}, c_plus={:.6f} (rel_err {:.2e}), c_minus={:.6f} (rel_err {:.2e}), runtime_s={:.2f}",
                         order, cp, ep, cm, em, t),
             threshold, pass}};
  } catch (const std::exception& e) {
    return {detail::failed(2, name, e, threshold)};
  }
}

/// Criterion 3: randomized perturbations of the canonical composite leave no
/// excess mass over the shifted composite.
inline SuiteReport verify_shifts(std::uint64_t seed = 7031) {
  using namespace tolerances;
  const std::string name = "shift_correctness";
  const std::string threshold =
      fmt::format("max(|I1|,|I2|)/scale<={:g}, runtime_s<{:g}", kShiftMass, kShiftSeconds);
  detail::Stopwatch clock;
  try {
    const GasModel gas = detail::canonical_gas();
    const auto d = detail::canonical_data();
    const auto cw0 = CompositeWave::two_shock(gas, d, 40.0);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> count_d(1, 3), target_d(0, 1);
    std::uniform_real_distribution<double> amp_d(-0.1, 0.1), center_d(-10.0, 50.0), width_d(0.5, 3.0);
    std::vector<std::vector<Perturbation>> samples(kShiftSamples);
    for (auto& perts : samples) {
      const int m = count_d(rng);
      for (int j = 0; j < m; ++j) {
        const char target = target_d(rng) ? 'u' : 'v';
        const double amp = amp_d(rng), center = center_d(rng), width = width_d(rng);
        perts.push_back({target, amp, center, width});
      }
    }

    std::vector<double> rel(kShiftSamples, INFINITY);
    parallel_for(samples.size(), [&](std::size_t k) {
      const auto& perts = samples[k];
      const Grid1D grid = auto_grid(cw0, 0.0, perts, GridSpec{true, 0.0, 0.0, 8001, std::nullopt});
      const FieldState s = initial_data(cw0, grid, perts);
      const ShiftInputs si = compute_shift_inputs(s.v, s.u, cw0, grid);
      const Shifts sh = solve_shifts(si, d);
      const ShiftInputs after = compute_shift_inputs(s.v, s.u, cw0.with_shifts(sh), grid);
      double scale = 0.0;
      for (const auto& p : perts) scale += std::abs(p.mass());
      rel[k] = std::max(std::abs(after.I01), std::abs(after.I02)) / scale;
    });
    const double worst = *std::max_element(rel.begin(), rel.end());
    const double t = clock.seconds();
    const bool pass = worst <= kShiftMass && t < kShiftSeconds;
    return {{3, name, fmt::format("samples={}, max_rel_excess={:.3e}, runtime_s={:.2f}", kShiftSamples, worst, t),
             threshold, pass}};
  } catch (const std::exception& e) {
    return {detail::failed(3, name, e, threshold)};
  }
}

/// Criterion 4: exponential decay of the interaction term in time and in separation.
inline SuiteReport verify_wdecay() {
  using namespace tolerances;
  const std::string name = "w_decay";
  const std::string threshold =
      fmt::format("rate>={:g}*c'(={:g}), ||W(0;{:g})||/||W(0;{:g})||>=exp(C_minus*{:g}/2), runtime_s<{:g}", kWRateFactor,
                  kCanonicalCPrime, kWBeta, kWBetaFar, kWBetaFar - kWBeta, kWSeconds) +
      ", C_minus predicted from profile rates";
  detail::Stopwatch clock;
  try {
    const GasModel gas = detail::canonical_gas();
    const auto d = detail::canonical_data();
    const auto cw = CompositeWave::two_shock(gas, d, kWBeta);
    const auto pred = predicted_w_decay(d, cw.wave1(), cw.wave2());
    const double margin = 40.0 / cw.min_decay_rate();
    const double lo = d.s1 * kWHorizon - margin, hi = kWBetaFar + d.s2 * kWHorizon + margin;
    const Grid1D grid(lo, hi, static_cast<std::size_t>(std::ceil((hi - lo) / 0.01)) + 1);

    std::vector<double> ts, ws;
    bool truncated = false;
    for (int k = 0; k <= 20; ++k) {
      const double t = 0.5 * k;
      const auto w = interaction_norm(cw, t, grid);
      truncated = truncated || w.truncated;
      ts.push_back(t);
      ws.push_back(w.norm);
    }
    const auto fit = fit_exponential_rate(ts, ws, 0.0, kWHorizon);
    const auto far = interaction_norm(cw.with_beta(kWBetaFar), 0.0, grid);
    truncated = truncated || far.truncated;
    const double ratio = ws.front() / far.norm;
    const double need = std::exp(pred.C_minus * 0.5 * (kWBetaFar - kWBeta));
    const double t = clock.seconds();
    const bool pass = !truncated && fit.rate >= kWRateFactor * kCanonicalCPrime && ratio >= need && t < kWSeconds;
    return {{4, name,
             fmt::format("rate={:.4f} (predicted c'={:.4f}), ratio={:.3e} (need {:.3e}, C_minus={:.6f}), truncated={}, "
                         "runtime_s={:.2f}",
                         fit.rate, pred.c_prime, ratio, need, pred.C_minus, truncated, t),
             threshold, pass}};
  } catch (const std::exception& e) {
    return {detail::failed(4, name, e, threshold)};
  }
}

/// Midpoint crossing of V = (v_left + v_right)/2, located by linear interpolation.
inline std::optional<double> volume_crossing(std::span<const double> v, const Grid1D& grid, double level) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double a = v[i] - level, b = v[i + 1] - level;
    if (a == 0.0) return grid.x(i);
    if ((a < 0.0) != (b < 0.0)) return grid.x(i) + grid.dx() * a / (a - b);
  }
  return std::nullopt;
}

/// Criterion 5: second-order convergence of the scheme on a translating 1-shock.
inline SuiteReport verify_convergence() {
  using namespace tolerances;
  const std::string name = "scheme_convergence";
  const std::string threshold = fmt::format("|order-{:g}|<={:g}, speed rel_err<={:g}, runtime_s<{:g}", kOrderTarget,
                                            kOrderBand, kSpeedRel, kConvergenceSeconds);
  detail::Stopwatch clock;
  try {
    const std::vector<double> dxs{0.1, 0.05, 0.025};
    std::vector<double> errs(dxs.size());
    std::optional<SimulationResult> finest;
    parallel_for(dxs.size(), [&](std::size_t k) {
      SimulationConfig cfg;
      cfg.wave.gas = detail::canonical_gas();
      cfg.wave.left = {2.0, 0.0};
      cfg.wave.v_m = 1.0;
      cfg.wave.single = true;
      cfg.grid.dx = dxs[k];
      cfg.time.T = kConvergenceT;
      cfg.time.record_dt = kConvergenceT;
      const bool last = k + 1 == dxs.size();
      if (last) {
        for (int j = 0; j <= 20; ++j) cfg.time.snapshot_times.push_back(kConvergenceT * j / 20.0);
      }
      auto res = run_simulation(cfg);
      const auto cf = sample_composite(res.composite, res.grid, res.final_state.t);
      std::vector<double> e2(res.grid.n);
      for (std::size_t i = 0; i < res.grid.n; ++i) {
        const double dv = res.final_state.v[i] - cf.V[i], du = res.final_state.u[i] - cf.U[i];
        e2[i] = dv * dv + du * du;
      }
      errs[k] = std::sqrt(trapezoid(e2, res.grid.dx()));
      if (last) finest = std::move(res);
    });
    const double order = detail::convergence_order(dxs, errs);

    const auto& res = *finest;
    const double level = 0.5 * (res.data.left.v + res.data.mid.v);
    std::vector<double> ts, xs;
    for (const auto& snap : res.snapshots) {
      const auto x = volume_crossing(snap.v, res.grid, level);
      if (!x) throw DomainError("verify", "shock midpoint left the grid");
      ts.push_back(snap.t);
      xs.push_back(*x);
    }
    const double speed = fit_line(ts, xs).slope;
    const double speed_err = std::abs(speed / res.data.s1 - 1.0);
    const double t = clock.seconds();
    const bool pass = std::abs(order - kOrderTarget) <= kOrderBand && speed_err <= kSpeedRel && t < kConvergenceSeconds;
    return {{5, name,
             fmt::format("errors={:.3e}/{:.3e}/{:.3e}, order={:.4f}, speed={:.6f} (s1={:.6f}, rel_err {:.2e}), "
                         "runtime_s={:.2f}",
                         errs[0], errs[1], errs[2], order, speed, res.data.s1, speed_err, t),
             threshold, pass}};
  } catch (const std::exception& e) {
    return {detail::failed(5, name, e, threshold)};
  }
}

/// The canonical perturbed composite of the stability experiment.
inline SimulationConfig stability_experiment() {
  SimulationConfig cfg;
  cfg.wave.gas = detail::canonical_gas();
  cfg.wave.left = {2.0, 0.0};
  cfg.wave.right = {2.0, 0.0};
  cfg.wave.v_m = 1.0;
  cfg.wave.beta = tolerances::kWBeta;
  cfg.perturbations = {{'v', 0.05, 20.0, 1.0}, {'u', 0.05, 20.0, 1.0}};
  cfg.grid.n = 4001;
  cfg.time.T = tolerances::kStabilityT;
  cfg.time.snapshot_times = {10.0, 25.0, 50.0};
  return cfg;
}

/// Max |Psi - Psi_closed| on the snapshot grid subsampled by `stride`.
inline double psi_consistency_error(const FieldState& snap, const CompositeWave& cw, const Grid1D& grid,
                                    std::size_t stride) {
  const std::size_t n = (grid.n - 1) / stride + 1;
  const Grid1D sub(grid.x_lo, grid.x(stride * (n - 1)), n);
  FieldState s;
  s.t = snap.t;
  for (std::size_t i = 0; i < n; ++i) {
    s.v.push_back(snap.v[i * stride]);
    s.u.push_back(snap.u[i * stride]);
  }
  const auto pf = antiderivatives(s, cw, sub);
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(pf.Psi[i] - pf.Psi_closed[i]));
  return err;
}

/// Criteria 6, 7 and 8 on one perturbed composite run.
inline SuiteReport verify_stability(const SimulationConfig& cfg, DiagnosticsSeries* series_out = nullptr,
                                    SimulationResult* result_out = nullptr) {
  using namespace tolerances;
  const std::string n6 = "composite_stability", n7 = "energy_structure", n8 = "effective_velocity_consistency";
  const std::string t6 = fmt::format("sup(t=T)/max_[0,{:g}] sup<={:g} for v and u, v in [v_m/2, 1.5 max v_pm], "
                                     "runtime_s<{:g}",
                                     kEarlyWindow, kSupRatio, kStabilitySeconds);
  const std::string t7 = fmt::format("max (E0+E1)/(E0(0)+E1(0)+exp(-C_minus beta))<={:g}, min_f>0, violation<={:g}",
                                     kEnergyFactor, kIneqViolation);
  const std::string t8 = fmt::format("order of max|Psi-Psi_closed| over dx,2dx,4dx>={:g}", kPsiOrder);
  detail::Stopwatch clock;
  std::optional<SimulationResult> run;
  try {
    run = run_simulation(cfg);
  } catch (const std::exception& e) {
    return {detail::failed(6, n6, e, t6), detail::failed(7, n7, e, t7), detail::failed(8, n8, e, t8)};
  }
  const double runtime = clock.seconds();
  auto& res = *run;
  const auto& ser = res.series;
  SuiteReport out;

  // Criterion 6.
  {
    double early_v = 0.0, early_u = 0.0, vmin = INFINITY, vmax = 0.0;
    const double window = std::min(kEarlyWindow, cfg.time.T);
    for (const auto& r : ser) {
      if (r.t <= window + 1e-9) {
        early_v = std::max(early_v, r.sup_v);
        early_u = std::max(early_u, r.sup_u);
      }
      vmin = std::min(vmin, r.v_min);
      vmax = std::max(vmax, r.v_max);
    }
    const double rv = ser.back().sup_v / early_v, ru = ser.back().sup_u / early_u;
    const double lo = 0.5 * res.data.mid.v, hi = 1.5 * std::max(res.data.left.v, res.data.right.v);
    const bool pass = rv <= kSupRatio && ru <= kSupRatio && vmin >= lo && vmax <= hi && runtime < kStabilitySeconds;
    out.push_back({6, n6,
                   fmt::format("T={:g}, n={}, shifts=({:.4e}, {:.4e}), ratio_v={:.4f}, ratio_u={:.4f}, "
                               "v_range=[{:.4f}, {:.4f}] (allowed [{:.4f}, {:.4f}]), runtime_s={:.1f}",
                               cfg.time.T, res.grid.n, res.shifts.beta1, res.shifts.beta2, rv, ru, vmin, vmax, lo, hi,
                               runtime),
                   t6, pass});
  }

  // Criterion 7.
  {
    double c_minus = 0.0;
    if (res.composite.has_wave1() && res.composite.has_wave2()) {
      c_minus = predicted_w_decay(res.data, res.composite.wave1(), res.composite.wave2()).C_minus;
    }
    const double base = ser.front().E0 + ser.front().E1 + std::exp(-c_minus * res.composite.beta());
    double worst_ratio = 0.0, min_f = INFINITY, worst_ineq = -INFINITY;
    for (const auto& r : ser) {
      worst_ratio = std::max(worst_ratio, (r.E0 + r.E1) / base);
      min_f = std::min(min_f, r.min_f);
      worst_ineq = std::max(worst_ineq, r.ineq_violation);
    }
    const bool pass = worst_ratio <= kEnergyFactor && min_f > 0.0 && worst_ineq <= kIneqViolation;
    out.push_back({7, n7,
                   fmt::format("max_energy_ratio={:.4f}, min_f={:.6f}, max_violation={:.3e}, records={}", worst_ratio,
                               min_f, worst_ineq, ser.size()),
                   t7, pass});
  }

  // Criterion 8.
  try {
    if (res.snapshots.empty()) throw ConfigError("no snapshots recorded; set time.snapshot_times");
    double worst_order = INFINITY;
    std::string detail_text;
    for (const auto& snap : res.snapshots) {
      std::vector<double> hs, es;
      for (std::size_t stride : {1, 2, 4}) {
        hs.push_back(res.grid.dx() * static_cast<double>(stride));
        es.push_back(psi_consistency_error(snap, res.composite, res.grid, stride));
      }
      const double order = detail::convergence_order(hs, es);
      worst_order = std::min(worst_order, order);
      detail_text += fmt::format("{}t={:g}: order {:.3f} (err {:.2e}/{:.2e}/{:.2e})", detail_text.empty() ? "" : ", ",
                                 snap.t, order, es[0], es[1], es[2]);
    }
    out.push_back({8, n8, fmt::format("min_order={:.4f}; {}", worst_order, detail_text), t8,
                   worst_order >= kPsiOrder});
  } catch (const std::exception& e) {
    out.push_back(detail::failed(8, n8, e, t8));
  }

  if (series_out) *series_out = ser;
  if (result_out) *result_out = std::move(res);
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"riemann", "profile", "shifts", "wdecay", "convergence", "stability",
                                              "all"};
  return names;
}

/// Runs a named suite; `stability` optionally overrides the stability experiment.
inline SuiteReport run_suite(const std::string& suite, const std::optional<SimulationConfig>& stability = {}) {
  auto append = [](SuiteReport& a, SuiteReport b) { a.insert(a.end(), b.begin(), b.end()); };
  SuiteReport r;
  if (suite == "riemann" || suite == "all") append(r, verify_riemann());
  if (suite == "profile" || suite == "all") append(r, verify_profile());
  if (suite == "shifts" || suite == "all") append(r, verify_shifts());
  if (suite == "wdecay" || suite == "all") append(r, verify_wdecay());
  if (suite == "convergence" || suite == "all") append(r, verify_convergence());
  if (suite == "stability" || suite == "all") append(r, verify_stability(stability.value_or(stability_experiment())));
  if (r.empty()) throw ConfigError("unknown suite '" + suite + "'");
  return r;
}

inline bool all_passed(const SuiteReport& r) {
  return std::all_of(r.begin(), r.end(), [](const CriterionResult& c) { return c.pass; });
}

} // namespace shockwave
