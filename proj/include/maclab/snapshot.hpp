#pragma once

// Dimension-erased copies of a field and axis-aligned line probes through it.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "maclab/error.hpp"
#include "maclab/grid.hpp"

namespace maclab {

struct Snapshot {
  int dim = 2;
  std::array<int, 3> dims{1, 1, 1};
  double dx = 1.0;
  double time = 0.0;
  long step = 0;
  std::vector<double> rho;
  std::array<std::vector<double>, 3> u;  // trailing components are zero in 2D

  std::size_t size() const noexcept { return rho.size(); }

  std::size_t index(int i, int j, int k = 0) const noexcept {
    return (static_cast<std::size_t>(k) * static_cast<std::size_t>(dims[1]) + static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(dims[0]) +
           static_cast<std::size_t>(i);
  }
};

template <int D>
Snapshot make_snapshot(const Grid<D>& grid, const FieldBuffer<D>& fields, double time = 0.0, long step = 0) {
  Snapshot s;
  s.dim = D;
  for (int d = 0; d < D; ++d) s.dims[d] = grid.extent(d);
  s.dx = grid.dx();
  s.time = time;
  s.step = step;
  s.rho = fields.rho;
  for (int d = 0; d < 3; ++d) s.u[d] = d < D ? fields.u[d] : std::vector<double>(fields.size(), 0.0);
  return s;
}

template <int D>
Snapshot make_snapshot(const Grid<D>& grid, const FieldState<D>& fields) {
  return make_snapshot(grid, fields.current(), fields.time(), fields.step_count());
}

/// Line of nodes along `axis` at fixed physical coordinates on the other
/// axes (listed in increasing axis order).
struct Probe {
  int component = 0;  // 0..2 -> ux, uy, uz; 3 -> rho
  int axis = 1;
  std::vector<double> at;
  std::string label;
  std::optional<std::string> reference;  // two-column dataset to compare against

  bool operator==(const Probe&) const = default;
};

struct Profile {
  std::vector<double> coord;  // physical position along the probe axis
  std::vector<double> value;
};

// Coordinates closer than this fraction of dx to a node are taken to sit on it.
inline constexpr double probe_snap_tolerance = 0.02;

inline int resolve_probe_coordinate(double x, double dx, int extent) {
  const double pos = x / dx;
  const double k = std::round(pos);
  if (std::abs(pos - k) > probe_snap_tolerance || k < 0 || k >= extent)
    throw ConfigError("probe coordinate " + std::to_string(x) + " is not on a grid line");
  return static_cast<int>(k);
}

inline Profile extract_profile(const Snapshot& s, const Probe& p) {
  if (p.axis < 0 || p.axis >= s.dim) throw ConfigError("probe axis outside the grid dimension");
  if (p.component < 0 || p.component > 3 || (p.component < 3 && p.component >= s.dim))
    throw ConfigError("probe component outside the grid dimension");
  if (static_cast<int>(p.at.size()) != s.dim - 1)
    throw ConfigError("probe needs " + std::to_string(s.dim - 1) + " fixed coordinate(s)");
  std::array<int, 3> fixed{0, 0, 0};
  for (int d = 0, k = 0; d < s.dim; ++d)
    if (d != p.axis) fixed[d] = resolve_probe_coordinate(p.at[static_cast<std::size_t>(k++)], s.dx, s.dims[d]);
  Profile out;
  const auto& field = p.component == 3 ? s.rho : s.u[static_cast<std::size_t>(p.component)];
  for (int n = 0; n < s.dims[p.axis]; ++n) {
    auto c = fixed;
    c[p.axis] = n;
    out.coord.push_back(n * s.dx);
    out.value.push_back(field[s.index(c[0], c[1], c[2])]);
  }
  return out;
}

inline std::string component_name(int component) {
  static const char* names[] = {"ux", "uy", "uz", "rho"};
  return component >= 0 && component <= 3 ? names[component] : "?";
}

inline std::string axis_name(int axis) {
  static const char* names[] = {"x", "y", "z"};
  return axis >= 0 && axis <= 2 ? names[axis] : "?";
}

}  // namespace maclab
