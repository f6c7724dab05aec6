#pragma once

// Benchmark flows: set-up, run loop with termination rules, and comparison
// against analytic solutions or tabulated reference profiles.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <numbers>
#include <optional>
#include <type_traits>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "maclab/analytic.hpp"
#include "maclab/core.hpp"
#include "maclab/error.hpp"
#include "maclab/grid.hpp"
#include "maclab/lattice.hpp"
#include "maclab/reference.hpp"
#include "maclab/snapshot.hpp"

#ifndef MACLAB_DATA_DIR
#define MACLAB_DATA_DIR "data"
#endif

namespace maclab {

enum class ScenarioKind { Couette, CouettePgrad, Cavity2D, TaylorGreen, Cavity3D, Custom };

struct ScenarioInfo {
  ScenarioKind kind;
  std::string_view name;
  std::string_view description;
};

inline constexpr std::array<ScenarioInfo, 6> scenario_catalog{{
    {ScenarioKind::Couette, "couette", "plane Couette flow, moving top plate, periodic in x (D2Q9)"},
    {ScenarioKind::CouettePgrad, "couette_pgrad", "Couette flow driven by a constant pressure gradient (D2Q9)"},
    {ScenarioKind::Cavity2D, "cavity2d", "lid-driven square cavity (D2Q9)"},
    {ScenarioKind::TaylorGreen, "taylor_green", "decaying Taylor-Green vortex on a periodic 2pi square (D2Q9)"},
    {ScenarioKind::Cavity3D, "cavity3d", "lid-driven cubic cavity (D3Q19)"},
    {ScenarioKind::Custom, "custom", "periodic box seeded with a random smooth state"},
}};

inline std::string_view to_string(ScenarioKind k) {
  for (const auto& s : scenario_catalog)
    if (s.kind == k) return s.name;
  return "?";
}

inline ScenarioKind parse_scenario_kind(std::string_view name) {
  for (const auto& s : scenario_catalog)
    if (s.name == name) return s.kind;
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

inline int scenario_dimension(ScenarioKind k, LatticeModel custom_lattice = LatticeModel::D2Q9) {
  if (k == ScenarioKind::Cavity3D) return 3;
  if (k == ScenarioKind::Custom) return custom_lattice == LatticeModel::D3Q19 ? 3 : 2;
  return 2;
}

inline std::array<double, 3> default_extents(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Couette:
    case ScenarioKind::CouettePgrad:
      return {0.4, 1.0, 0.0};
    case ScenarioKind::TaylorGreen:
      return {analytic::taylor_green_period, analytic::taylor_green_period, 0.0};
    case ScenarioKind::Cavity3D:
      return {1.0, 1.0, 1.0};
    default:
      return {1.0, 1.0, 1.0};
  }
}

// Axes with periodic closure per scenario.
inline std::array<bool, 3> scenario_periodicity(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Couette:
    case ScenarioKind::CouettePgrad:
      return {true, false, false};
    case ScenarioKind::TaylorGreen:
    case ScenarioKind::Custom:
      return {true, true, true};
    default:
      return {false, false, false};
  }
}

/// Node count on an axis of physical length L: L/dx lattice intervals, plus
/// one node when both ends are walls.
inline int node_count(double length, double dx, bool periodic) {
  const int lattices = static_cast<int>(std::lround(length / dx));
  return periodic ? lattices : lattices + 1;
}

struct Termination {
  std::optional<double> t_end;       // unsteady: run until accumulated time reaches t_end
  std::optional<double> steady_tol;  // steady: relative velocity change per sample interval
  long max_steps = 5'000'000;
  long sample_interval = 100;
};

struct Scenario {
  ScenarioKind kind = ScenarioKind::Couette;
  LatticeModel lattice = LatticeModel::D2Q9;  // only consulted for Custom
  double dx = 0.02;
  std::array<double, 3> extents = default_extents(ScenarioKind::Couette);
  double nu = 0.01;
  double u0 = 0.1;
  double dpdx = 0.0;
  Termination termination;
  std::vector<Probe> probes;
  int partitions = 1;
  std::uint64_t seed = 1;
  std::string reference_dir = MACLAB_DATA_DIR;
  bool builtin_comparisons = true;

  long output_cadence = 0;  // steps between on_sample calls; 0 disables
  std::function<void(const Snapshot&)> on_sample;
  std::function<void(long, const StabilityDiagnostic&)> on_progress;

  int dim() const { return scenario_dimension(kind, lattice); }

  std::array<int, 3> node_counts() const {
    const auto per = scenario_periodicity(kind);
    std::array<int, 3> n{1, 1, 1};
    for (int d = 0; d < dim(); ++d) n[d] = node_count(extents[d], dx, per[d]);
    return n;
  }

  double velocity_scale() const { return u0; }
};

struct Comparison {
  std::string label;
  ErrorNorms norms;
  std::size_t samples = 0;
};

struct ScenarioReport {
  ScenarioKind kind = ScenarioKind::Couette;
  std::vector<Comparison> comparisons;
  double mass_drift = 0.0;  // |M(t) - M(0)| / M(0)
  std::vector<StabilityDiagnostic> stability;
  long steps = 0;
  double time = 0.0;
  double wall_seconds = 0.0;
  bool converged = false;
  double e = 0.0;
  double dt = 0.0;
  Snapshot final_state;

  const Comparison* find(std::string_view label) const {
    for (const auto& c : comparisons)
      if (c.label == label) return &c;
    return nullptr;
  }
};

/// True when max |u_curr - u_prev| / max(u_scale, eps) < tol.
template <int D>
bool steady_state_check(const FieldBuffer<D>& prev, const FieldBuffer<D>& curr, double tol, double u_scale) {
  if (prev.size() != curr.size()) throw ConfigError("steady-state check needs equal shapes");
  double change = 0.0;
  for (int d = 0; d < D; ++d)
    for (std::size_t n = 0; n < curr.size(); ++n) change = std::max(change, std::abs(curr.u[d][n] - prev.u[d][n]));
  const double scale = std::max(u_scale, std::numeric_limits<double>::min());
  return change / scale < tol;
}

/// Smooth periodic perturbation of a uniform state built from a few random
/// low-wavenumber Fourier modes; density stays within 1 +- amplitude.
template <int D>
std::function<MacroState<D>(const Vec<D>&)> random_smooth_field(const Grid<D>& grid, std::uint64_t seed,
                                                                double amplitude = 0.01,
                                                                std::type_identity_t<Vec<D>> mean_velocity = {}) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> wave(1, 3);
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  constexpr int modes = 4;
  struct Mode {
    std::array<int, D> k;
    double phase;
    double weight;
  };
  std::array<std::array<Mode, modes>, D + 1> spec{};
  for (auto& channel : spec)
    for (auto& m : channel) {
      for (int d = 0; d < D; ++d) m.k[d] = wave(rng);
      m.phase = phase(rng);
      m.weight = weight(rng) / modes;
    }
  std::array<double, D> length{};
  for (int d = 0; d < D; ++d) length[d] = grid.extent(d) * grid.dx();
  return [=](const Vec<D>& x) {
    auto eval = [&](const std::array<Mode, modes>& channel) {
      double s = 0.0;
      for (const auto& m : channel) {
        double arg = m.phase;
        for (int d = 0; d < D; ++d) arg += 2.0 * std::numbers::pi * m.k[d] * x[d] / length[d];
        s += m.weight * std::sin(arg);
      }
      return s;
    };
    MacroState<D> st;
    st.rho = 1.0 + amplitude * eval(spec[0]);
    for (int d = 0; d < D; ++d) st.u[d] = mean_velocity[d] + amplitude * eval(spec[static_cast<std::size_t>(d) + 1]);
    return st;
  };
}

/// Stream-function extremum located inside a search window.
struct VortexCore {
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;
};

struct CavityVortices {
  std::optional<VortexCore> primary;
  std::optional<VortexCore> bottom_left;
  std::optional<VortexCore> bottom_right;
};

/// Stream function psi(x, y) = int_0^y u dy' on a plane of a snapshot
/// (horizontal axis a, vertical axis b, fixed index on the remaining axis).
inline std::vector<double> stream_function(const Snapshot& s, int a, int b, int fixed_index = 0) {
  const int na = s.dims[a], nb = s.dims[b];
  std::vector<double> psi(static_cast<std::size_t>(na) * static_cast<std::size_t>(nb), 0.0);
  for (int i = 0; i < na; ++i) {
    double acc = 0.0;
    double prev = 0.0;
    for (int j = 0; j < nb; ++j) {
      std::array<int, 3> c{fixed_index, fixed_index, fixed_index};
      c[a] = i;
      c[b] = j;
      const double u = s.u[static_cast<std::size_t>(a)][s.index(c[0], c[1], c[2])];
      if (j > 0) acc += 0.5 * (u + prev) * s.dx;
      prev = u;
      psi[static_cast<std::size_t>(j) * static_cast<std::size_t>(na) + static_cast<std::size_t>(i)] = acc;
    }
  }
  return psi;
}

/// Primary (psi minimum) and counter-rotating bottom-corner (psi maximum)
/// vortices of a plane whose lid moves along +a at the top of axis b. A
/// corner vortex counts only when its extremum is strictly positive and
/// lies inside, not on the edge of, its search window.
inline CavityVortices find_cavity_vortices(const Snapshot& s, int a = 0, int b = 1, int fixed_index = 0) {
  const auto psi = stream_function(s, a, b, fixed_index);
  const int na = s.dims[a], nb = s.dims[b];
  auto at = [&](int i, int j) { return psi[static_cast<std::size_t>(j) * static_cast<std::size_t>(na) + static_cast<std::size_t>(i)]; };
  auto search = [&](double x0, double x1, double y0, double y1, bool want_max) -> std::optional<VortexCore> {
    const int i0 = std::max(1, static_cast<int>(x0 * (na - 1))), i1 = std::min(na - 2, static_cast<int>(x1 * (na - 1)));
    const int j0 = std::max(1, static_cast<int>(y0 * (nb - 1))), j1 = std::min(nb - 2, static_cast<int>(y1 * (nb - 1)));
    int bi = -1, bj = -1;
    double best = want_max ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) {
        const double v = at(i, j);
        if (want_max ? v > best : v < best) best = v, bi = i, bj = j;
      }
    if (bi < 0) return std::nullopt;
    if (bi == i0 || bi == i1 || bj == j0 || bj == j1) return std::nullopt;
    if (want_max && !(best > 0.0)) return std::nullopt;
    if (!want_max && !(best < 0.0)) return std::nullopt;
    return VortexCore{bi * s.dx, bj * s.dx, best};
  };
  CavityVortices v;
  v.primary = search(0.05, 0.95, 0.05, 0.95, false);
  v.bottom_left = search(0.0, 0.4, 0.0, 0.4, true);
  v.bottom_right = search(0.6, 1.0, 0.0, 0.4, true);
  return v;
}

/// Centre of rotation in the in-plane projection of a velocity field.
/// vorticity = d(u_b)/da - d(u_a)/db at the centre.
struct PlaneVortex {
  double x = 0.0;
  double y = 0.0;
  double vorticity = 0.0;
  double speed = 0.0;
};

/// Rotating critical points of the plane projection (axes a, b through
/// fixed_index): interior nodes where the in-plane speed is a local minimum
/// over the 3x3 neighbourhood and below speed_tol, and the velocity gradient
/// has complex eigenvalues. Works for 3D slices, where no stream function
/// exists. Results come in row-major scan order.
inline std::vector<PlaneVortex> find_plane_vortices(const Snapshot& s, int a, int b, int fixed_index,
                                                    double speed_tol) {
  const int na = s.dims[a], nb = s.dims[b];
  auto vel = [&](int comp, int i, int j) {
    std::array<int, 3> c{fixed_index, fixed_index, fixed_index};
    c[a] = i;
    c[b] = j;
    return s.u[static_cast<std::size_t>(comp)][s.index(c[0], c[1], c[2])];
  };
  auto speed = [&](int i, int j) { return std::hypot(vel(a, i, j), vel(b, i, j)); };
  std::vector<PlaneVortex> out;
  for (int j = 2; j < nb - 2; ++j)
    for (int i = 2; i < na - 2; ++i) {
      const double sp = speed(i, j);
      if (!(sp < speed_tol)) continue;
      bool minimum = true;
      for (int dj = -1; dj <= 1 && minimum; ++dj)
        for (int di = -1; di <= 1; ++di)
          if ((di || dj) && speed(i + di, j + dj) < sp) minimum = false;
      if (!minimum) continue;
      const double h2 = 2.0 * s.dx;
      const double daa = (vel(a, i + 1, j) - vel(a, i - 1, j)) / h2, dab = (vel(a, i, j + 1) - vel(a, i, j - 1)) / h2;
      const double dba = (vel(b, i + 1, j) - vel(b, i - 1, j)) / h2, dbb = (vel(b, i, j + 1) - vel(b, i, j - 1)) / h2;
      const double tr = daa + dbb, det = daa * dbb - dab * dba;
      if (tr * tr - 4.0 * det >= 0.0) continue;  // saddle or node, no swirl
      out.push_back({i * s.dx, j * s.dx, dba - dab, sp});
    }
  return out;
}

namespace detail {

template <int D>
Vec<D> lid_velocity(double u0) {
  Vec<D> u{};
  u[0] = u0;
  return u;
}

// Fixed walls get zero velocity; the top face along the last axis moves at
// (u0, 0[, 0]) except where it meets another wall.
template <int D>
BoundarySpec<D> wall_boundary(const Grid<D>& grid, double u0) {
  BoundarySpec<D> bc;
  const int top_axis = D - 1;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    if (grid.node_class(n) != NodeClass::PrescribedVelocity) continue;
    const auto c = grid.coord(n);
    bool lid = c[top_axis] == grid.extent(top_axis) - 1;
    for (int d = 0; d < D && lid; ++d)
      if (d != top_axis && !grid.periodic(d) && (c[d] == 0 || c[d] == grid.extent(d) - 1)) lid = false;
    bc.prescribe(n, lid ? lid_velocity<D>(u0) : Vec<D>{});
  }
  return bc;
}

inline std::optional<std::string> bundled_reference(const Scenario& s, const std::string& file) {
  const auto path = std::filesystem::path(s.reference_dir) / file;
  if (std::filesystem::exists(path)) return path.string();
  return std::nullopt;
}

inline bool reynolds_is(const Scenario& s, double re) {
  return std::abs(s.u0 / s.nu - re) <= 1e-6 * re;
}

inline ErrorNorms compare_to_reference(const Profile& prof, double length, double scale, const ReferenceDataset& ref) {
  std::vector<double> xs, vs;
  for (std::size_t k = 0; k < prof.coord.size(); ++k) {
    xs.push_back(prof.coord[k] / length);
    vs.push_back(prof.value[k] / scale);
  }
  std::vector<double> sim;
  for (double x : ref.coord) sim.push_back(interpolate(xs, vs, x));
  return error_norms(sim, ref.value);
}

template <int D>
std::vector<Probe> builtin_reference_probes(const Scenario& s) {
  std::vector<Probe> out;
  if (!s.builtin_comparisons) return out;
  if (s.kind == ScenarioKind::Cavity2D && reynolds_is(s, 1000.0)) {
    if (auto p = bundled_reference(s, "ghia1982_re1000_ux.dat"))
      out.push_back({0, 1, {0.5 * s.extents[0]}, "ux(y) at x=0.5 vs Ghia", p});
    if (auto p = bundled_reference(s, "ghia1982_re1000_uy.dat"))
      out.push_back({1, 0, {0.5 * s.extents[1]}, "uy(x) at y=0.5 vs Ghia", p});
  }
  if (s.kind == ScenarioKind::Cavity3D && reynolds_is(s, 400.0)) {
    if (auto p = bundled_reference(s, "wong_baker2002_re400_ux.dat"))
      out.push_back({0, 2, {0.5 * s.extents[0], 0.5 * s.extents[1]}, "ux(z) at x=y=0.5 vs Wong-Baker", p});
  }
  return out;
}

template <Lattice L>
void analytic_comparisons(const Scenario& s, const Snapshot& snap, std::vector<Comparison>& out) {
  if (!s.builtin_comparisons) return;
  if (s.kind == ScenarioKind::Couette || s.kind == ScenarioKind::CouettePgrad) {
    const analytic::CouetteParams cp{s.extents[1], s.u0, s.dpdx, 1.0, s.nu};
    const Probe probe{0, 1, {0.0}, "ux(y)", std::nullopt};
    const auto prof = extract_profile(snap, probe);
    std::vector<double> ys, us, ref;
    // Interior nodes only; the wall values are imposed.
    for (std::size_t k = 1; k + 1 < prof.coord.size(); ++k) {
      ys.push_back(prof.coord[k]);
      us.push_back(prof.value[k]);
      ref.push_back(analytic::couette_profile(std::min(prof.coord[k], cp.h), cp));
    }
    out.push_back({"ux(y) vs analytic", error_norms(us, ref), us.size()});
  }
  if (s.kind == ScenarioKind::TaylorGreen) {
    const analytic::TaylorGreenParams tp{s.u0, s.nu};
    auto column = [&](double x, int comp, const char* label) {
      const auto prof = extract_profile(snap, Probe{comp, 1, {x}, label, std::nullopt});
      const double xn = resolve_probe_coordinate(x, snap.dx, snap.dims[0]) * snap.dx;
      std::vector<double> num, ref;
      for (std::size_t k = 0; k < prof.coord.size(); ++k) {
        num.push_back(prof.value[k] / s.u0);
        ref.push_back(analytic::taylor_green(xn, prof.coord[k], snap.time, tp)[static_cast<std::size_t>(comp)] / s.u0);
      }
      out.push_back({label, error_norms(num, ref), num.size()});
    };
    column(std::numbers::pi, 0, "ux/u0 at x=pi vs analytic");
    column(std::numbers::pi / 2, 1, "uy/u0 at x=pi/2 vs analytic");
  }
}

template <Lattice L>
Grid<L::dim> scenario_grid(const Scenario& s) {
  constexpr int D = L::dim;
  const auto counts = s.node_counts();
  const auto per = scenario_periodicity(s.kind);
  typename Grid<D>::Index dims{};
  std::array<bool, D> periodic{};
  for (int d = 0; d < D; ++d) dims[d] = counts[d], periodic[d] = per[d];
  Grid<D> grid(dims, s.dx, periodic);
  grid.mark_walls();
  return grid;
}

template <Lattice L>
Solver<L> scenario_solver(const Scenario& s) {
  constexpr int D = L::dim;
  auto grid = scenario_grid<L>(s);
  std::optional<Vec<D>> grad;
  if (s.dpdx != 0.0) {
    Vec<D> g{};
    g[0] = s.dpdx;
    grad = g;
  }
  auto kin = derive_kinetics<D>(s.nu, s.dx, grad);
  auto bc = wall_boundary(grid, s.u0);
  Solver<L> solver(std::move(grid), kin, std::move(bc), s.partitions);
  if (s.kind == ScenarioKind::TaylorGreen) {
    if constexpr (D == 2) {
      const analytic::TaylorGreenParams tp{s.u0, s.nu};
      solver.initialize([&](const Vec<2>& x) {
        const auto u = analytic::taylor_green(x[0], x[1], 0.0, tp);
        return MacroState<2>{1.0, {u[0], u[1]}};
      });
    }
  } else if (s.kind == ScenarioKind::Custom) {
    Vec<D> mean{};
    mean[0] = s.u0;
    solver.initialize(random_smooth_field(solver.grid(), s.seed, 0.01, mean));
  }
  return solver;
}

template <Lattice L>
ScenarioReport run_lattice(const Scenario& s) {
  constexpr int D = L::dim;
  const auto t0 = std::chrono::steady_clock::now();
  auto solver = scenario_solver<L>(s);
  const auto& kin = solver.kinetics();

  ScenarioReport rep;
  rep.kind = s.kind;
  rep.e = kin.e;
  rep.dt = kin.dt;
  const double mass0 = total_mass(solver.fields().current());
  rep.stability.push_back(solver.stability());

  const auto& term = s.termination;
  const long interval = std::max(1L, term.sample_interval);
  auto snapshot = [&] { return make_snapshot(solver.grid(), solver.fields()); };

  if (term.t_end) {
    const long steps = static_cast<long>(std::ceil(*term.t_end / kin.dt - 1e-9));
    for (long k = 0; k < steps; ++k) {
      solver.step();
      const long n = solver.fields().step_count();
      if (n % interval == 0) {
        rep.stability.push_back(solver.stability());
        if (s.on_progress) s.on_progress(n, rep.stability.back());
      }
      if (s.output_cadence > 0 && n % s.output_cadence == 0 && s.on_sample) s.on_sample(snapshot());
    }
    rep.converged = true;
  } else {
    const double tol = term.steady_tol.value_or(1e-8);
    FieldBuffer<D> prev = solver.fields().current();
    while (solver.fields().step_count() < term.max_steps) {
      solver.step();
      const long n = solver.fields().step_count();
      if (s.output_cadence > 0 && n % s.output_cadence == 0 && s.on_sample) s.on_sample(snapshot());
      if (n % interval != 0) continue;
      const auto& cur = solver.fields().current();
      rep.stability.push_back(solver.stability());
      if (s.on_progress) s.on_progress(n, rep.stability.back());
      // Without a lid speed the flow's own peak speed sets the scale.
      const double scale = s.u0 > 0.0 ? s.u0 : rep.stability.back().u_max;
      if (steady_state_check(prev, cur, tol, scale)) {
        rep.converged = true;
        break;
      }
      prev = cur;
    }
  }

  rep.steps = solver.fields().step_count();
  rep.time = solver.fields().time();
  rep.mass_drift = std::abs(total_mass(solver.fields().current()) - mass0) / mass0;
  if (rep.stability.size() == 1 || rep.stability.back().u_max != solver.stability().u_max)
    rep.stability.push_back(solver.stability());
  rep.final_state = snapshot();

  analytic_comparisons<L>(s, rep.final_state, rep.comparisons);
  auto probes = builtin_reference_probes<D>(s);
  probes.insert(probes.end(), s.probes.begin(), s.probes.end());
  for (const auto& p : probes) {
    if (!p.reference) continue;
    const auto ref = load_reference(*p.reference);
    const auto prof = extract_profile(rep.final_state, p);
    const double scale = s.u0 > 0.0 ? s.u0 : 1.0;
    const std::string label = p.label.empty() ? component_name(p.component) + "(" + axis_name(p.axis) + ")" : p.label;
    rep.comparisons.push_back({label, compare_to_reference(prof, s.extents[static_cast<std::size_t>(p.axis)], scale, ref),
                               ref.size()});
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace detail

inline void validate_scenario(const Scenario& s) {
  if (!(s.dx > 0.0)) throw ConfigError("dx must be positive");
  if (!(s.nu > 0.0)) throw ConfigError("nu must be positive");
  if (s.u0 < 0.0) throw ConfigError("u0 must be nonnegative");
  if (s.termination.t_end && s.termination.steady_tol)
    throw ConfigError("termination needs either t_end or steady_tol, not both");
  if (s.termination.t_end && !(*s.termination.t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (s.termination.steady_tol && !(*s.termination.steady_tol > 0.0)) throw ConfigError("steady_tol must be positive");
  if (s.termination.max_steps <= 0) throw ConfigError("max_steps must be positive");
  if (s.termination.sample_interval <= 0) throw ConfigError("sample_interval must be positive");
  if ((s.kind == ScenarioKind::TaylorGreen || s.kind == ScenarioKind::Custom) && !s.termination.t_end)
    throw ConfigError(std::string(to_string(s.kind)) + " is unsteady and needs t_end");
  if (s.dpdx != 0.0 && s.kind != ScenarioKind::CouettePgrad && s.kind != ScenarioKind::Custom)
    throw ConfigError("dpdx is only meaningful for couette_pgrad");
  if (s.kind == ScenarioKind::Custom && s.dim() == 2 && s.lattice != LatticeModel::D2Q9)
    throw ConfigError("custom 2D scenarios use D2Q9");
  for (const auto& p : s.probes)
    if (p.axis < 0 || p.axis >= s.dim()) throw ConfigError("probe axis outside the grid dimension");
}

/// Runs a scenario to its termination rule and compares the final state with
/// the analytic solution or bundled reference data where one applies.
inline ScenarioReport run_scenario(const Scenario& s) {
  validate_scenario(s);
  if (s.dim() == 3) return detail::run_lattice<D3Q19>(s);
  return detail::run_lattice<D2Q9>(s);
}

/// Published benchmark settings for each scenario.
inline Scenario default_scenario(ScenarioKind kind) {
  Scenario s;
  s.kind = kind;
  s.extents = default_extents(kind);
  switch (kind) {
    case ScenarioKind::Couette:
      s.dx = 0.02, s.nu = 0.01, s.u0 = 0.1;
      break;
    case ScenarioKind::CouettePgrad:
      s.dx = 0.02, s.nu = 0.001, s.u0 = 0.0, s.dpdx = -1e-4;
      break;
    case ScenarioKind::Cavity2D:
      s.dx = 0.0025, s.nu = 0.001, s.u0 = 1.0;
      break;
    case ScenarioKind::TaylorGreen:
      s.dx = 0.157, s.nu = 0.0314, s.u0 = 0.05;
      s.termination.t_end = 30.0;
      break;
    case ScenarioKind::Cavity3D:
      s.dx = 0.004, s.nu = 0.0025, s.u0 = 1.0;
      s.lattice = LatticeModel::D3Q19;
      break;
    case ScenarioKind::Custom:
      s.dx = 1.0 / 32, s.nu = 0.01, s.u0 = 0.02;
      s.termination.t_end = 1.0;
      break;
  }
  return s;
}

}  // namespace maclab
