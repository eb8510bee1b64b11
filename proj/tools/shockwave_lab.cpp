// shockwave-lab: command-line driver for the composite-wave laboratory.
//
//   shockwave-lab <riemann|profile|shifts|simulate|verify> --config <path> [--out <dir>] [--suite <name>]

#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "shockwave/composite.hpp"
#include "shockwave/config.hpp"
#include "shockwave/csv.hpp"
#include "shockwave/errors.hpp"
#include "shockwave/profile.hpp"
#include "shockwave/riemann.hpp"
#include "shockwave/simulation.hpp"
#include "shockwave/verify.hpp"

namespace fs = std::filesystem;
using namespace shockwave;

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string suite = "all";
};

// Prints -0 as 0.
double clean(double x) { return x + 0.0; }

fs::path output_dir(const Options& opt, const std::optional<ExperimentConfig>& cfg) {
  if (!opt.out.empty()) return opt.out;
  return cfg ? fs::path(cfg->output_dir) : fs::path("out");
}

int cmd_riemann(const ExperimentConfig& cfg, const fs::path& out) {
  const auto& w = cfg.sim.wave;
  const auto d = resolve_riemann(w);
  const auto r = rh_residuals(w.gas, d);
  fmt::print("v_minus={:.6g} u_minus={:.6g} v_plus={:.6g} u_plus={:.6g}\n", d.left.v, d.left.u, d.right.v,
             d.right.u);
  fmt::print("v_m={:.6g} u_m={:.6g} s1={:.6g} s2={:.6g}\n", d.mid.v, d.mid.u, d.s1, d.s2);
  fmt::print("chi1={:.6g} chi2={:.6g}\n", d.chi1, d.chi2);
  fmt::print("rh_residual_max={:.3e} entropy_admissible={}\n",
             std::max({std::abs(r.mass1), std::abs(r.momentum1), std::abs(r.mass2), std::abs(r.momentum2)}),
             w.single ? true : entropy_admissible(w.gas, d));
  CsvBuilder csv("v_minus,u_minus,v_m,u_m,v_plus,u_plus,s1,s2,chi1,chi2");
  csv.row({d.left.v, d.left.u, d.mid.v, d.mid.u, d.right.v, d.right.u, d.s1, d.s2, d.chi1, d.chi2});
  write_file_atomic(out / "riemann.csv", csv.str());
  return 0;
}

int cmd_profile(const ExperimentConfig& cfg, const fs::path& out) {
  const auto& w = cfg.sim.wave;
  const auto d = resolve_riemann(w);
  for (int family : {1, 2}) {
    if (family == 2 && w.single) break;
    const auto p = ShockProfile::from_two_shock(w.gas, d, family, w.profile);
    fmt::print("profile {}: s={:.6g} c_minus={:.6g} c_plus={:.6g} nodes={} xi=[{:.4g}, {:.4g}] gaps=({:.2e}, {:.2e})\n",
               family, p.speed(), p.c_minus(), p.c_plus(), p.table().size(), p.xi_first(), p.xi_last(),
               std::abs(p.gap_left()), std::abs(p.gap_right()));
    write_file_atomic(out / fmt::format("profile{}.csv", family), profile_csv(p));
  }
  return 0;
}

int cmd_shifts(const ExperimentConfig& cfg, const fs::path& out) {
  const auto& sim = cfg.sim;
  const auto d = resolve_riemann(sim.wave);
  const auto cw0 = build_composite(sim.wave, d);
  const Grid1D grid = sim.grid.automatic ? auto_grid(cw0, sim.time.T, sim.perturbations, sim.grid)
                                         : Grid1D(sim.grid.x_lo, sim.grid.x_hi, sim.grid.n);
  const auto s = initial_data(cw0, grid, sim.perturbations);
  const auto si = compute_shift_inputs(s.v, s.u, cw0, grid);
  const Shifts sh = sim.wave.single ? solve_single_shift(si, cw0.wave1()) : solve_shifts(si, d);
  fmt::print("I01={:.10g} I02={:.10g}\n", clean(si.I01), clean(si.I02));
  fmt::print("beta1={:.10g} beta2={:.10g}\n", clean(sh.beta1), clean(sh.beta2));
  if (!sim.wave.single) check_separation(cw0.beta(), sh);
  CsvBuilder csv("I01,I02,beta1,beta2");
  csv.row({clean(si.I01), clean(si.I02), clean(sh.beta1), clean(sh.beta2)});
  write_file_atomic(out / "shifts.csv", csv.str());
  return 0;
}

int cmd_simulate(const ExperimentConfig& cfg, const fs::path& out) {
  const auto res = run_simulation(cfg.sim);
  write_file_atomic(out / "diag.csv", diagnostics_csv(res.series));
  for (const auto& snap : res.snapshots) {
    write_file_atomic(out / fmt::format("snapshot_t{:g}.csv", snap.t), snapshot_csv(snap, res.composite, res.grid));
  }
  const auto& first = res.series.front();
  const auto& last = res.series.back();
  fmt::print("grid=[{:.6g}, {:.6g}] n={} dx={:.6g} steps={}\n", res.grid.x_lo, res.grid.x_hi, res.grid.n,
             res.grid.dx(), res.steps);
  fmt::print("beta1={:.10g} beta2={:.10g}\n", clean(res.shifts.beta1), clean(res.shifts.beta2));
  fmt::print("t={:g}: sup_v={:.4e} sup_u={:.4e} E0+E1={:.4e}\n", first.t, first.sup_v, first.sup_u,
             first.E0 + first.E1);
  fmt::print("t={:g}: sup_v={:.4e} sup_u={:.4e} E0+E1={:.4e}\n", last.t, last.sup_v, last.sup_u, last.E0 + last.E1);
  fmt::print("wrote {} records and {} snapshots to {}\n", res.series.size(), res.snapshots.size(), out.string());
  return 0;
}

int cmd_verify(const Options& opt, const std::optional<ExperimentConfig>& cfg, const fs::path& out) {
  std::optional<SimulationConfig> stability;
  if (cfg) stability = cfg->sim;
  const auto report = run_suite(opt.suite, stability);
  std::string text;
  for (const auto& c : report) text += c.line() + "\n";
  std::fputs(text.c_str(), stdout);
  if (!opt.out.empty()) write_file_atomic(out / fmt::format("verify_{}.txt", opt.suite), text);
  const bool ok = all_passed(report);
  fmt::print("{}\n", ok ? "all criteria passed" : "one or more criteria FAILED");
  return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composite viscous shock laboratory"};
  app.require_subcommand(1);
  Options opt;

  auto add = [&](const std::string& name, const std::string& help, bool config_required) {
    auto* sub = app.add_subcommand(name, help);
    auto* c = sub->add_option("--config", opt.config, "Experiment configuration file")->check(CLI::ExistingFile);
    if (config_required) c->required();
    sub->add_option("--out", opt.out, "Output directory (overrides output.dir)");
    return sub;
  };
  auto* riemann = add("riemann", "Solve the two-shock Riemann problem", true);
  auto* profile = add("profile", "Integrate the viscous shock profiles", true);
  auto* shifts = add("shifts", "Compute the shifts of a perturbed composite wave", true);
  auto* simulate = add("simulate", "Evolve a perturbed composite wave and record diagnostics", true);
  auto* verify = add("verify", "Run acceptance suites", false);
  verify->add_option("--suite", opt.suite, "Suite name")->check(CLI::IsMember(suite_names()));

  CLI11_PARSE(app, argc, argv);

  try {
    std::optional<ExperimentConfig> cfg;
    if (!opt.config.empty()) cfg = parse_config(fs::path(opt.config));
    const fs::path out = output_dir(opt, cfg);
    if (riemann->parsed()) return cmd_riemann(*cfg, out);
    if (profile->parsed()) return cmd_profile(*cfg, out);
    if (shifts->parsed()) return cmd_shifts(*cfg, out);
    if (simulate->parsed()) return cmd_simulate(*cfg, out);
    if (verify->parsed()) return cmd_verify(opt, cfg, out);
  } catch (const StateError& e) {
    fmt::print(stderr, "error at t={:g}: {}\n", e.snapshot().t, e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
  return 0;
}
