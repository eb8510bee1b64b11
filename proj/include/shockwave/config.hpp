#pragma once

// Experiment configuration: flat "key = value" lines with dotted section
// prefixes, '#' starts a comment. Perturbations are numbered groups:
//
//   gas.gamma = 2
//   riemann.v_minus = 2
//   riemann.v_m = 1
//   perturbation.1.target = v
//   perturbation.1.amplitude = 0.05

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "shockwave/errors.hpp"
#include "shockwave/riemann.hpp"
#include "shockwave/simulation.hpp"

namespace shockwave {

struct ExperimentConfig {
  SimulationConfig sim;
  std::string output_dir = "out";
  std::filesystem::path source;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class KeyValues {
public:
  void set(std::string key, std::string value, int line) {
    if (values_.count(key)) throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
    values_[std::move(key)] = std::move(value);
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::optional<std::string> text(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    used_.insert(key);
    return it->second;
  }

  std::optional<double> number(const std::string& key) {
    auto s = text(key);
    if (!s) return std::nullopt;
    double x = 0.0;
    const auto* end = s->data() + s->size();
    const auto [ptr, ec] = std::from_chars(s->data(), end, x);
    if (ec != std::errc{} || ptr != end || !std::isfinite(x)) {
      throw ConfigError("key '" + key + "' expects a finite number, got '" + *s + "'");
    }
    return x;
  }

  double number_or(const std::string& key, double fallback) { return number(key).value_or(fallback); }

  double required(const std::string& key) {
    auto x = number(key);
    if (!x) throw ConfigError("missing required key '" + key + "'");
    return *x;
  }

  std::optional<bool> flag(const std::string& key) {
    auto s = text(key);
    if (!s) return std::nullopt;
    if (*s == "true" || *s == "1" || *s == "yes") return true;
    if (*s == "false" || *s == "0" || *s == "no") return false;
    throw ConfigError("key '" + key + "' expects true or false, got '" + *s + "'");
  }

  std::vector<double> list(const std::string& key) {
    std::vector<double> out;
    auto s = text(key);
    if (!s) return out;
    std::stringstream ss(*s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto t = std::string(trim(item));
      if (t.empty()) continue;
      double x = 0.0;
      const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
      if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ConfigError("key '" + key + "' expects a comma-separated list of numbers");
      }
      out.push_back(x);
    }
    return out;
  }

  std::set<std::string> perturbation_ids() const {
    std::set<std::string> ids;
    const std::string prefix = "perturbation.";
    for (const auto& [k, v] : values_) {
      if (k.rfind(prefix, 0) != 0) continue;
      const auto rest = k.substr(prefix.size());
      const auto dot = rest.find('.');
      if (dot == std::string::npos || dot == 0) throw ConfigError("malformed perturbation key '" + k + "'");
      ids.insert(rest.substr(0, dot));
    }
    return ids;
  }

  void reject_unused() const {
    for (const auto& [k, v] : values_) {
      if (!used_.count(k)) throw ConfigError("unknown key '" + k + "'");
    }
  }

private:
  std::map<std::string, std::string> values_;
  std::set<std::string> used_;
};

inline KeyValues read_key_values(std::istream& in) {
  KeyValues kv;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
    }
    const auto key = trim(s.substr(0, eq));
    const auto value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line) + ": empty key or value");
    }
    kv.set(std::string(key), std::string(value), line);
  }
  return kv;
}

} // namespace detail

/// Parses and validates a configuration from a stream.
inline ExperimentConfig parse_config(std::istream& in) {
  auto kv = detail::read_key_values(in);
  ExperimentConfig cfg;
  auto& sim = cfg.sim;
  auto& w = sim.wave;

  w.gas.a = kv.number_or("gas.a", 1.0);
  w.gas.gamma = kv.number_or("gas.gamma", 2.0);
  w.gas.alpha = kv.number_or("gas.alpha", 0.0);
  if (!(w.gas.a > 0.0)) throw ConfigError("gas.a must be positive");
  if (!(w.gas.alpha >= 0.0)) throw ConfigError("gas.alpha must be nonnegative");
  w.gas.validate();

  w.left = {kv.required("riemann.v_minus"), kv.number_or("riemann.u_minus", 0.0)};
  w.v_m = kv.number("riemann.v_m");
  if (auto mode = kv.text("riemann.mode")) {
    if (*mode == "single") w.single = true;
    else if (*mode != "two_shock") throw ConfigError("riemann.mode must be two_shock or single");
  }
  if (w.single) {
    if (kv.has("riemann.v_plus") || kv.has("riemann.u_plus")) {
      throw ConfigError("single-shock mode takes riemann.v_m instead of right states");
    }
  } else {
    w.right.v = kv.required("riemann.v_plus");
    if (w.v_m) {
      if (kv.has("riemann.u_plus")) throw ConfigError("constructive form derives riemann.u_plus from riemann.v_m");
    } else {
      w.right.u = kv.required("riemann.u_plus");
    }
  }
  if (!(w.left.v > 0.0) || (!w.single && !(w.right.v > 0.0))) {
    throw ConfigError("specific volumes must be positive");
  }
  if (!w.single && !w.v_m && !in_ss_region(w.gas, w.left, w.right)) {
    throw NoTwoShockSolution("right state is not connected to the left state by a 1-shock and a 2-shock");
  }
  w.beta = kv.number_or("wave.beta", 40.0);
  if (!(w.beta > 0.0)) throw ConfigError("wave.beta must be positive");
  w.profile.tol = kv.number_or("profile.tol", w.profile.tol);
  w.profile.xi_max = kv.number_or("profile.xi_max", w.profile.xi_max);
  if (!(w.profile.tol > 0.0 && w.profile.tol < 1.0)) throw ConfigError("profile.tol must lie in (0, 1)");
  if (!(w.profile.xi_max > 0.0)) throw ConfigError("profile.xi_max must be positive");

  for (const auto& id : kv.perturbation_ids()) {
    const std::string p = "perturbation." + id + ".";
    Perturbation q;
    const auto target = kv.text(p + "target");
    if (!target || (*target != "v" && *target != "u")) throw ConfigError(p + "target must be v or u");
    q.target = (*target)[0];
    q.amplitude = kv.required(p + "amplitude");
    q.center = kv.required(p + "center");
    q.width = kv.required(p + "width");
    if (!(q.width > 0.0)) throw ConfigError(p + "width must be positive");
    sim.perturbations.push_back(q);
  }

  sim.grid.automatic = kv.flag("grid.auto").value_or(!kv.has("grid.x_lo"));
  if (auto n = kv.number("grid.n")) {
    if (!(*n >= 16.0) || *n != std::floor(*n)) throw ConfigError("grid.n must be an integer >= 16");
    sim.grid.n = static_cast<std::size_t>(*n);
  }
  if (sim.grid.automatic) {
    if (kv.has("grid.x_lo") || kv.has("grid.x_hi")) throw ConfigError("grid.x_lo/x_hi conflict with grid.auto");
    if (auto dx = kv.number("grid.dx")) {
      if (!(*dx > 0.0)) throw ConfigError("grid.dx must be positive");
      if (kv.has("grid.n")) throw ConfigError("give either grid.n or grid.dx, not both");
      sim.grid.dx = *dx;
    }
  } else {
    sim.grid.x_lo = kv.required("grid.x_lo");
    sim.grid.x_hi = kv.required("grid.x_hi");
    if (!(sim.grid.x_hi > sim.grid.x_lo)) throw ConfigError("grid.x_hi must exceed grid.x_lo");
    if (kv.has("grid.dx")) throw ConfigError("grid.dx is only used with grid.auto");
  }

  sim.time.T = kv.number_or("time.T", 50.0);
  if (!(sim.time.T > 0.0)) throw ConfigError("time.T must be positive");
  sim.time.record_dt = kv.number_or("time.record_dt", sim.time.T / 200.0);
  if (!(sim.time.record_dt > 0.0)) throw ConfigError("time.record_dt must be positive");
  sim.time.snapshot_times = kv.list("time.snapshot_times");
  for (double s : sim.time.snapshot_times) {
    if (s < 0.0 || s > sim.time.T) throw ConfigError("time.snapshot_times must lie in [0, T]");
  }

  sim.scheme.cfl_hyperbolic = kv.number_or("scheme.cfl_hyperbolic", 0.4);
  sim.scheme.cfl_viscous = kv.number_or("scheme.cfl_viscous", 0.4);
  sim.scheme.validate();

  if (auto dir = kv.text("output.dir")) cfg.output_dir = *dir;
  kv.reject_unused();
  return cfg;
}

inline ExperimentConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

inline ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  auto cfg = parse_config(in);
  cfg.source = path;
  return cfg;
}

} // namespace shockwave
