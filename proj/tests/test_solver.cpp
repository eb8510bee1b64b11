#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "shockwave/composite.hpp"
#include "shockwave/simulation.hpp"
#include "shockwave/solver.hpp"

using namespace shockwave;

namespace {

const GasModel kGas{1.0, 2.0, 0.0};

FieldState constant_state(const Grid1D& g, double v, double u) {
  return {0.0, std::vector<double>(g.n, v), std::vector<double>(g.n, u)};
}

double l2(const std::vector<double>& f, double dx) {
  double s = 0.0;
  for (double x : f) s += x * x * dx;
  return std::sqrt(s);
}

TwoShockData canonical() {
  const EndState mid{1.0, hugoniot_u(kGas, {2.0, 0.0}, 1.0)};
  return solve_intermediate(kGas, {2.0, 0.0}, {2.0, hugoniot_u(kGas, mid, 2.0)});
}

} // namespace

TEST(Rhs, ConstantStateIsEquilibrium) {
  const Grid1D g(0.0, 1.0, 33);
  const auto r = semidiscrete_rhs(kGas, constant_state(g, 1.7, -0.4), g);
  for (std::size_t i = 0; i < g.n; ++i) {
    EXPECT_EQ(r.dv[i], 0.0);
    EXPECT_EQ(r.du[i], 0.0);
  }
}

TEST(Rhs, LinearVelocityExact) {
  const Grid1D g(-1.0, 2.0, 61);
  auto s = constant_state(g, 1.0, 0.0);
  for (std::size_t i = 0; i < g.n; ++i) s.u[i] = 0.3 + 2.5 * g.x(i);
  const auto r = semidiscrete_rhs(kGas, s, g);
  for (std::size_t i = 1; i + 1 < g.n; ++i) {
    EXPECT_NEAR(r.dv[i], 2.5, 1e-12);
    EXPECT_NEAR(r.du[i], 0.0, 1e-10);
  }
  EXPECT_EQ(r.dv.front(), 0.0);
  EXPECT_EQ(r.du.back(), 0.0);
}

TEST(Rhs, TravelingWaveIdentitySecondOrder) {
  const auto p = ShockProfile::from_two_shock(kGas, canonical(), 1);
  std::vector<double> errs;
  for (double dx : {0.1, 0.05, 0.025}) {
    const auto n = static_cast<std::size_t>(std::llround(30.0 / dx)) + 1;
    const Grid1D g(-15.0, 15.0, n);
    FieldState s;
    for (std::size_t i = 0; i < n; ++i) {
      const auto q = p.eval(g.x(i));
      s.v.push_back(q.V);
      s.u.push_back(q.U);
    }
    const auto r = semidiscrete_rhs(kGas, s, g);
    std::vector<double> e(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) e[i] = r.dv[i] + p.speed() * p.eval(g.x(i)).Vx;
    errs.push_back(l2(e, dx));
  }
  EXPECT_NEAR(std::log2(errs[0] / errs[1]), 2.0, 0.2);
  EXPECT_NEAR(std::log2(errs[1] / errs[2]), 2.0, 0.2);
}

TEST(Rhs, DiscreteMassBookkeeping) {
  const Grid1D g(0.0, 4.0, 101);
  auto s = constant_state(g, 1.0, 0.0);
  for (std::size_t i = 0; i < g.n; ++i) {
    s.v[i] = 1.0 + 0.2 * std::sin(g.x(i));
    s.u[i] = std::cos(1.3 * g.x(i));
  }
  const auto r = semidiscrete_rhs(kGas, s, g);
  double total = 0.0;
  for (double x : r.dv) total += x * g.dx();
  const std::size_t n = g.n;
  EXPECT_NEAR(total, 0.5 * (s.u[n - 1] + s.u[n - 2] - s.u[1] - s.u[0]), 1e-12);
}

TEST(Rhs, NonpositiveVolumeIsStateError) {
  const Grid1D g(0.0, 1.0, 17);
  auto s = constant_state(g, 1.0, 0.0);
  s.v[5] = -0.1;
  EXPECT_THROW(semidiscrete_rhs(kGas, s, g), StateError);
}

TEST(StableDt, HandValue) {
  const auto n = static_cast<std::size_t>(std::llround(1.0 / 0.05)) + 1;
  const Grid1D g(0.0, 1.0, n);
  EXPECT_NEAR(stable_dt(kGas, constant_state(g, 1.0, 0.0), g), 5e-4, 1e-16);
}

TEST(StableDt, Scaling) {
  const Grid1D g(0.0, 1.0, 101), h(0.0, 1.0, 201);
  const SchemeConfig viscous_only{0.9, 1e-3};
  const double a = stable_dt(kGas, constant_state(g, 1.0, 0.0), g, viscous_only);
  const double b = stable_dt(kGas, constant_state(h, 1.0, 0.0), h, viscous_only);
  EXPECT_LE(b, 0.25 * a * (1.0 + 1e-12));
  // v -> 2v: hyperbolic bound grows by 2^((gamma+1)/2), viscous bound by 2^(alpha+1).
  const SchemeConfig hyper_only{1e-3, 0.9};
  const double c1 = stable_dt(kGas, constant_state(g, 1.0, 0.0), g, hyper_only);
  const double c2 = stable_dt(kGas, constant_state(g, 2.0, 0.0), g, hyper_only);
  EXPECT_NEAR(c2 / c1, std::pow(2.0, 1.5), 1e-12);
  const double d2 = stable_dt(kGas, constant_state(g, 2.0, 0.0), g, viscous_only);
  EXPECT_NEAR(d2 / a, 2.0, 1e-12);
}

TEST(Rk4, ConstantStatePreserved) {
  const Grid1D g(0.0, 1.0, 21);
  const auto s = constant_state(g, 1.3, 0.2);
  const auto next = rk4_step(kGas, s, 1e-3, g);
  EXPECT_DOUBLE_EQ(next.t, 1e-3);
  EXPECT_EQ(next.v, s.v);
  EXPECT_EQ(next.u, s.u);
}

TEST(Rk4, BoundaryValuesPinned) {
  const Grid1D g(0.0, 3.0, 61);
  auto s = constant_state(g, 1.0, 0.0);
  for (std::size_t i = 0; i < g.n; ++i) s.u[i] = 0.1 * std::sin(g.x(i));
  const auto next = rk4_step(kGas, s, 1e-4, g);
  EXPECT_EQ(next.v.front(), s.v.front());
  EXPECT_EQ(next.u.back(), s.u.back());
}

TEST(Rk4, LocalErrorFifthOrder) {
  const Grid1D g(0.0, 2.0 * std::numbers::pi, 41);
  FieldState s0;
  for (std::size_t i = 0; i < g.n; ++i) {
    s0.v.push_back(1.0 + 0.1 * std::sin(g.x(i)));
    s0.u.push_back(0.1 * std::cos(2.0 * g.x(i)));
  }
  auto reference = [&](double dt) {
    FieldState s = s0;
    Rk4Stepper st(kGas, g);
    for (int k = 0; k < 64; ++k) st.step(s, dt / 64.0);
    return s;
  };
  std::vector<double> errs;
  for (double dt : {4e-3, 2e-3}) {
    const auto a = rk4_step(kGas, s0, dt, g);
    const auto b = reference(dt);
    double e = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) e = std::max({e, std::abs(a.v[i] - b.v[i]), std::abs(a.u[i] - b.u[i])});
    errs.push_back(e);
  }
  EXPECT_GT(std::log2(errs[0] / errs[1]), 4.5);
}

TEST(Rk4, MassChangeMatchesBoundaryFlux) {
  const Grid1D g(0.0, 1.0, 51);
  auto s = constant_state(g, 1.0, 0.0);
  for (std::size_t i = 0; i < g.n; ++i) s.u[i] = -0.4 + 1.5 * g.x(i);
  const double dt = 1e-4;
  const auto next = rk4_step(kGas, s, dt, g);
  double before = 0.0, after = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    before += s.v[i] * g.dx();
    after += next.v[i] * g.dx();
  }
  const std::size_t n = g.n;
  const double flux = 0.5 * (s.u[n - 1] + s.u[n - 2] - s.u[1] - s.u[0]);
  // Velocities next to the pinned ends start moving at O(dt), so the flux drifts at O(dt^2).
  EXPECT_NEAR(after - before, dt * flux, 10.0 * dt * dt);
}

TEST(Rk4, PositivityLossCarriesSnapshot) {
  const Grid1D g(0.0, 1.0, 21);
  auto s = constant_state(g, 0.01, 0.0);
  s.u[10] = -50.0;
  try {
    rk4_step(kGas, s, 1e-3, g);
    FAIL() << "expected StateError";
  } catch (const StateError& e) {
    EXPECT_EQ(e.snapshot().v.size(), g.n);
    EXPECT_EQ(e.stage(), "solver");
  }
}

TEST(EffectiveVelocity, ConstantVolume) {
  const Grid1D g(0.0, 1.0, 21);
  auto s = constant_state(g, 2.0, 0.0);
  for (std::size_t i = 0; i < g.n; ++i) s.u[i] = g.x(i) * g.x(i);
  const auto h = effective_velocity(kGas, s, g);
  for (std::size_t i = 0; i < g.n; ++i) EXPECT_EQ(h[i], s.u[i]);
}

TEST(EffectiveVelocity, ExponentialVolume) {
  const double k = 0.7;
  for (double dx : {0.02, 0.01}) {
    const auto n = static_cast<std::size_t>(std::llround(2.0 / dx)) + 1;
    const Grid1D g(0.0, 2.0, n);
    auto s = constant_state(g, 1.0, 0.5);
    for (std::size_t i = 0; i < n; ++i) s.v[i] = std::exp(k * g.x(i));
    const auto h = effective_velocity(kGas, s, g);
    for (std::size_t i = 1; i + 1 < n; ++i) EXPECT_NEAR(h[i], 0.5 - k, 0.2 * k * k * k * dx * dx);
  }
}

TEST(EffectiveVelocity, MatchesCompositeH) {
  const auto cw = CompositeWave::two_shock(kGas, canonical(), 20.0);
  std::vector<double> errs;
  for (double dx : {0.1, 0.05}) {
    const auto n = static_cast<std::size_t>(std::llround(60.0 / dx)) + 1;
    const Grid1D g(-20.0, 40.0, n);
    const auto s = initial_data(cw, g, {});
    const auto h = effective_velocity(kGas, s, g);
    const auto cf = sample_composite(cw, g, 0.0);
    double e = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) e = std::max(e, std::abs(h[i] - cf.H[i]));
    errs.push_back(e);
  }
  EXPECT_NEAR(std::log2(errs[0] / errs[1]), 2.0, 0.2);
}

TEST(RunSimulation, SingleShockTravelsWithProfile) {
  std::vector<double> errs;
  for (double dx : {0.2, 0.1}) {
    SimulationConfig cfg;
    cfg.wave.gas = kGas;
    cfg.wave.left = {2.0, 0.0};
    cfg.wave.v_m = 1.0;
    cfg.wave.single = true;
    cfg.grid.dx = dx;
    cfg.time.T = 2.0;
    cfg.time.record_dt = 0.5;
    const auto r = run_simulation(cfg);
    double worst = 0.0;
    for (const auto& rec : r.series) worst = std::max(worst, rec.sup_v);
    EXPECT_LT(worst, 0.1 * dx * dx);
    errs.push_back(worst);
  }
  EXPECT_NEAR(std::log2(errs[0] / errs[1]), 2.0, 0.3);
}

TEST(RunSimulation, UnperturbedCompositeStaysClose) {
  SimulationConfig cfg;
  cfg.wave.gas = kGas;
  cfg.wave.left = {2.0, 0.0};
  cfg.wave.right = {2.0, 0.0};
  cfg.wave.v_m = 1.0;
  cfg.wave.beta = 20.0;
  cfg.grid.dx = 0.1;
  cfg.time.T = 2.0;
  cfg.time.record_dt = 0.5;
  const auto r = run_simulation(cfg);
  EXPECT_EQ(r.shifts.beta1, 0.0);
  EXPECT_EQ(r.shifts.beta2, 0.0);
  for (const auto& rec : r.series) EXPECT_LT(rec.sup_v, 0.1 * 0.1 * 0.1);
}

TEST(RunSimulation, SeriesBookkeeping) {
  SimulationConfig cfg;
  cfg.wave.gas = kGas;
  cfg.wave.left = {2.0, 0.0};
  cfg.wave.right = {2.0, 0.0};
  cfg.wave.v_m = 1.0;
  cfg.perturbations = {{'v', 0.05, 20.0, 1.0}, {'u', -0.03, 15.0, 2.0}};
  cfg.grid.dx = 0.1;
  cfg.time.T = 1.0;
  cfg.time.record_dt = 0.1;
  cfg.time.snapshot_times = {0.35, 1.0};
  const auto r = run_simulation(cfg);
  ASSERT_EQ(r.series.size(), 11u);
  ASSERT_EQ(r.snapshots.size(), 2u);
  EXPECT_DOUBLE_EQ(r.snapshots[0].t, 0.35);
  for (std::size_t i = 0; i < r.series.size(); ++i) {
    if (i > 0) EXPECT_GT(r.series[i].t, r.series[i - 1].t);
    for (double x : {r.series[i].sup_v, r.series[i].E0, r.series[i].E1, r.series[i].l2_W, r.series[i].h2_psi}) {
      EXPECT_TRUE(std::isfinite(x));
    }
  }
  EXPECT_DOUBLE_EQ(r.series.back().t, 1.0);
}
