#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "shockwave/diagnostics.hpp"
#include "shockwave/fit.hpp"
#include "shockwave/simulation.hpp"

using namespace shockwave;

namespace {

const GasModel kGas{1.0, 2.0, 0.0};

TwoShockData canonical() {
  const EndState mid{1.0, hugoniot_u(kGas, {2.0, 0.0}, 1.0)};
  return solve_intermediate(kGas, {2.0, 0.0}, {2.0, hugoniot_u(kGas, mid, 2.0)});
}

const CompositeWave& composite() {
  static const CompositeWave cw = CompositeWave::two_shock(kGas, canonical(), 40.0);
  return cw;
}

Grid1D grid_with(double dx) {
  const auto n = static_cast<std::size_t>(std::llround(120.0 / dx)) + 1;
  return Grid1D(-40.0, 80.0, n);
}

} // namespace

TEST(Antiderivatives, ZeroPerturbation) {
  const auto g = grid_with(0.05);
  const auto s = initial_data(composite(), g, {});
  const auto pf = antiderivatives(s, composite(), g);
  for (std::size_t i = 0; i < g.n; ++i) {
    EXPECT_EQ(pf.phi[i], 0.0);
    EXPECT_EQ(pf.psi[i], 0.0);
    EXPECT_EQ(pf.Psi_closed[i], 0.0);
    // h - H is the discretization error of the effective velocity.
    EXPECT_NEAR(pf.Psi[i], 0.0, 0.05 * g.dx() * g.dx());
  }
}

TEST(Antiderivatives, BumpArea) {
  const auto g = grid_with(0.05);
  const double width = 1.2, m = 0.08;
  const std::vector<Perturbation> p{{'v', m / (width * std::sqrt(std::numbers::pi)), 10.0, width}};
  const auto s = initial_data(composite(), g, p);
  const auto pf = antiderivatives(s, composite(), g);
  EXPECT_NEAR(pf.phi.back(), m, 1e-12);
}

TEST(Antiderivatives, LeftBoundaryChecked) {
  const auto g = grid_with(0.1);
  const std::vector<Perturbation> p{{'u', 0.1, -39.0, 1.0}};
  const auto s = initial_data(composite(), g, p);
  EXPECT_THROW(antiderivatives(s, composite(), g), TruncationError);
}

TEST(Antiderivatives, ClosedFormSecondOrder) {
  const std::vector<Perturbation> p{{'v', 0.1, 5.0, 1.0}, {'u', 0.05, 30.0, 2.0}};
  std::vector<double> errs;
  for (double dx : {0.1, 0.05, 0.025}) {
    const auto g = grid_with(dx);
    const auto s = initial_data(composite(), g, p);
    const auto pf = antiderivatives(s, composite(), g);
    double e = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) e = std::max(e, std::abs(pf.Psi[i] - pf.Psi_closed[i]));
    errs.push_back(e);
  }
  EXPECT_NEAR(std::log2(errs[0] / errs[1]), 2.0, 0.2);
  EXPECT_NEAR(std::log2(errs[1] / errs[2]), 2.0, 0.2);
}

TEST(Antiderivatives, ClosedFormWithViscosityExponent) {
  const GasModel gas{1.0, 1.4, 0.5};
  const EndState mid{0.8, hugoniot_u(gas, {1.6, 0.0}, 0.8)};
  const auto d = solve_intermediate(gas, {1.6, 0.0}, {1.4, hugoniot_u(gas, mid, 1.4)});
  const auto cw = CompositeWave::two_shock(gas, d, 40.0);
  const std::vector<Perturbation> p{{'v', 0.05, 15.0, 1.5}};
  std::vector<double> errs;
  for (double dx : {0.1, 0.05}) {
    const auto n = static_cast<std::size_t>(std::llround(200.0 / dx)) + 1;
    const Grid1D g(-80.0, 120.0, n);
    const auto s = initial_data(cw, g, p);
    const auto pf = antiderivatives(s, cw, g);
    double e = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) e = std::max(e, std::abs(pf.Psi[i] - pf.Psi_closed[i]));
    errs.push_back(e);
  }
  EXPECT_NEAR(std::log2(errs[0] / errs[1]), 2.0, 0.3);
}

TEST(Sobolev, ZeroArray) {
  const std::vector<double> z(50, 0.0);
  const auto n = sobolev_norms(z, 0.1);
  EXPECT_EQ(n.l2, 0.0);
  EXPECT_EQ(n.linf, 0.0);
  EXPECT_EQ(n.h1, 0.0);
  EXPECT_EQ(n.h2, 0.0);
}

TEST(Sobolev, SineOverPeriod) {
  const double k = 3.0, period = 2.0 * std::numbers::pi / k;
  const std::size_t n = 20001;
  const double dx = period / static_cast<double>(n - 1);
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = std::sin(k * dx * static_cast<double>(i));
  const auto s = sobolev_norms(f, dx);
  EXPECT_NEAR(s.l2 * s.l2, period / 2.0, 1e-6);
  EXPECT_NEAR(s.linf, 1.0, 1e-6);
  EXPECT_NEAR(s.h1 * s.h1, (1.0 + k * k) * period / 2.0, 1e-5);
  EXPECT_GE(s.h1, s.l2);
  EXPECT_GE(s.h2, s.h1);
}

TEST(PerturbationTerms, ZeroPerturbation) {
  const auto g = grid_with(0.1);
  const auto s = initial_data(composite(), g, {});
  const auto cf = sample_composite(composite(), g, 0.0);
  const auto pf = antiderivatives(kGas, s, cf, g);
  const auto t = perturbation_terms(kGas, s, cf, pf, g);
  for (std::size_t i = 0; i < g.n; ++i) {
    EXPECT_EQ(t.pvV[i], 0.0);
    EXPECT_NEAR(t.F[i], 0.0, 1e-2 * 0.01);  // discrete vs analytic derivatives: O(dx^2)
    EXPECT_NEAR(t.G[i], 0.0, 1e-2 * 0.01);
  }
}

TEST(PerturbationTerms, FBoundedBelow) {
  const auto g = grid_with(0.1);
  const std::vector<Perturbation> p{{'v', 0.05, 20.0, 1.0}};
  const auto s = initial_data(composite(), g, p);
  const auto cf = sample_composite(composite(), g, 0.0);
  const auto pf = antiderivatives(kGas, s, cf, g);
  const auto t = perturbation_terms(kGas, s, cf, pf, g);
  double min_f = INFINITY, min_dp = INFINITY;
  double ratio = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    min_f = std::min(min_f, t.f[i]);
    min_dp = std::min(min_dp, -kGas.dpressure(cf.V[i]));
    if (pf.phi_x[i] * pf.phi_x[i] > 1e-16) ratio = std::max(ratio, std::abs(t.pvV[i]) / (pf.phi_x[i] * pf.phi_x[i]));
  }
  EXPECT_GE(min_f, min_dp);
  EXPECT_GT(min_dp, 0.0);
  // p(v|V) / phi_x^2 is close to p''(V)/2 <= 3 for V >= 1.
  EXPECT_LE(ratio, 3.5);
}

TEST(Energy, ZeroAndPurePhi) {
  const auto g = grid_with(0.1);
  auto s = initial_data(composite(), g, {});
  const auto cf = sample_composite(composite(), g, 0.0);
  auto pf = antiderivatives(kGas, s, cf, g);
  auto e = energy_functionals(kGas, pf, cf, g.dx());
  EXPECT_LT(std::abs(e.E0), 1e-5);
  EXPECT_LT(std::abs(e.E1), 1e-5);

  for (auto* a : {&pf.phi, &pf.Psi, &pf.phi_x, &pf.Psi_x}) std::fill(a->begin(), a->end(), 0.0);
  e = energy_functionals(kGas, pf, cf, g.dx());
  EXPECT_EQ(e.E0, 0.0);
  EXPECT_EQ(e.E1, 0.0);

  std::fill(pf.Psi.begin(), pf.Psi.end(), 0.0);
  for (std::size_t i = 0; i < g.n; ++i) pf.phi[i] = std::exp(-std::pow(g.x(i) - 20.0, 2));
  e = energy_functionals(kGas, pf, cf, g.dx());
  EXPECT_NEAR(e.E0, std::pow(l2_norm(pf.phi, g.dx()), 2), 1e-14);
}

TEST(Energy, IndependentQuadrature) {
  const auto g = grid_with(0.1);
  const auto cf = sample_composite(composite(), g, 0.0);
  PerturbationFields pf;
  for (auto* a : {&pf.phi, &pf.psi, &pf.Psi, &pf.phi_x, &pf.psi_x, &pf.Psi_x}) a->assign(g.n, 0.0);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    pf.phi[i] = 0.1 * std::exp(-std::pow((x - 5.0) / 2.0, 2));
    pf.Psi[i] = 0.2 * std::exp(-std::pow((x - 25.0) / 3.0, 2));
  }
  const auto e = energy_functionals(kGas, pf, cf, g.dx());
  // Simpson's rule on the same integrand.
  double sum = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    const double w = (i == 0 || i + 1 == g.n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * (pf.phi[i] * pf.phi[i] - pf.Psi[i] * pf.Psi[i] / kGas.dpressure(cf.V[i]));
  }
  EXPECT_NEAR(e.E0, sum * g.dx() / 3.0, 1e-10);
  EXPECT_GT(e.E0, 0.0);
}

TEST(Fit, ExactExponential) {
  std::vector<double> t, y;
  for (int k = 0; k <= 20; ++k) {
    t.push_back(0.25 * k);
    y.push_back(std::exp(-2.0 * t.back()));
  }
  EXPECT_NEAR(fit_exponential_rate(t, y).rate, 2.0, 1e-12);
}

TEST(Fit, NoisyExponential) {
  std::vector<double> t, y;
  for (int k = 0; k <= 100; ++k) {
    t.push_back(0.1 * k);
    y.push_back(5.0 * std::exp(-1.25 * t.back()) * (1.0 + 0.01 * std::sin(t.back())));
  }
  const auto f = fit_exponential_rate(t, y, 0.0, 10.0);
  EXPECT_NEAR(f.rate, 1.25, 0.02);
  EXPECT_LT(f.rms_residual, 0.02);
}

TEST(Fit, ConstantSeries) {
  const std::vector<double> t{0, 1, 2, 3, 4, 5}, y(6, 3.0);
  EXPECT_NEAR(fit_exponential_rate(t, y).rate, 0.0, 1e-15);
}

TEST(Fit, NonpositiveRejected) {
  const std::vector<double> t{0, 1, 2, 3, 4, 5}, y{1, 0.5, 0.0, 0.1, 0.1, 0.1};
  EXPECT_THROW(fit_exponential_rate(t, y), DomainError);
}

TEST(Inequalities, CanonicalComposite) {
  const Grid1D g(-60.0, 120.0, 9001);
  for (double t : {0.0, 5.0, 20.0}) {
    const auto r = pointwise_inequality_report(composite().with_shifts({0.1, -0.05}), g, t);
    EXPECT_LE(r.steepening, 1e-12) << "t = " << t;
    EXPECT_LE(r.f_bound, 1e-12) << "t = " << t;
  }
}

TEST(Inequalities, SingleShock) {
  const Grid1D g(-30.0, 30.0, 3001);
  const auto r = pointwise_inequality_report(composite().without_wave2(), g, 1.0);
  EXPECT_LE(r.worst(), 1e-12);
}

TEST(Record, PerturbedCanonical) {
  const auto g = grid_with(0.1);
  const std::vector<Perturbation> p{{'v', 0.05, 20.0, 1.0}, {'u', 0.05, 20.0, 1.0}};
  const auto s = initial_data(composite(), g, p);
  const auto r = compute_record(s, composite(), g);
  EXPECT_NEAR(r.sup_v, 0.05, 1e-3);
  EXPECT_NEAR(r.sup_u, 0.05, 1e-3);
  EXPECT_GT(r.E0, 0.0);
  EXPECT_GT(r.E1, 0.0);
  EXPECT_GT(r.min_f, 0.0);
  EXPECT_LE(r.ineq_violation, 1e-12);
  EXPECT_GE(r.h2_phi, r.h1_phi);
  EXPECT_GE(r.h1_phi, r.l2_phi);
}
