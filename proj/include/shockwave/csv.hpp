#pragma once

// Plot-ready CSV output: header row, '.' decimal point, 17 significant digits
// so binary64 values round-trip. Files are written to a temporary name and
// renamed into place.

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "shockwave/composite.hpp"
#include "shockwave/diagnostics.hpp"
#include "shockwave/errors.hpp"
#include "shockwave/grid.hpp"
#include "shockwave/profile.hpp"
#include "shockwave/solver.hpp"

namespace shockwave {

inline constexpr const char* kDiagHeader =
    "t,sup_v,sup_u,l2_phi,h1_phi,h2_phi,l2_psi,h1_psi,l2_Psi,l2_W,E0,E1,min_f,ineq_violation";

class CsvBuilder {
public:
  explicit CsvBuilder(std::string header) : text_(std::move(header)) { text_ += '\n'; }

  void row(std::initializer_list<double> values) { row(std::span<const double>(values.begin(), values.size())); }

  void row(std::span<const double> values) {
    bool first = true;
    for (double x : values) {
      if (!first) text_ += ',';
      fmt::format_to(std::back_inserter(text_), "{:.17g}", x);
      first = false;
    }
    text_ += '\n';
  }

  const std::string& str() const { return text_; }

private:
  std::string text_;
};

/// Writes `content` to `path` atomically (temporary file, then rename).
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("output", "cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw Error("output", "failed writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

inline std::string diagnostics_csv(const DiagnosticsSeries& series) {
  CsvBuilder csv(kDiagHeader);
  for (const auto& r : series) {
    csv.row({r.t, r.sup_v, r.sup_u, r.l2_phi, r.h1_phi, r.h2_phi, r.l2_psi, r.h1_psi, r.l2_Psi, r.l2_W, r.E0, r.E1,
             r.min_f, r.ineq_violation});
  }
  return csv.str();
}

/// Profile sampled on the integration nodes.
inline std::string profile_csv(const ShockProfile& p) {
  CsvBuilder csv("xi,V,U,Vx,Ux");
  for (const auto& [xi, V] : p.table()) {
    const auto s = p.eval(xi);
    csv.row({xi, s.V, s.U, s.Vx, s.Ux});
  }
  return csv.str();
}

/// Solution, shifted composite wave and effective velocities on the grid.
inline std::string snapshot_csv(const FieldState& state, const CompositeWave& cw, const Grid1D& grid) {
  const auto cf = sample_composite(cw, grid, state.t);
  const auto h = effective_velocity(cw.gas(), state, grid);
  CsvBuilder csv("x,v,u,V,U,h,H,W");
  for (std::size_t i = 0; i < grid.n; ++i) {
    csv.row({grid.x(i), state.v[i], state.u[i], cf.V[i], cf.U[i], h[i], cf.H[i], cf.W[i]});
  }
  return csv.str();
}

} // namespace shockwave
