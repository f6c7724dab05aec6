#pragma once

// Collision-free lattice Boltzmann time stepping on macroscopic fields.
//
// Each step pulls, for every fluid node x and link a, the equilibrium
// population feq_a evaluated from the previous state at x - c_a, then
//   rho(x) = sum_a feq_a,   u(x) = e / rho * sum_a c_a feq_a.
// The particle speed is tied to the viscosity, e = 6 nu / dx, and dt = dx / e.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <type_traits>
#include <utility>
#include <span>
#include <vector>

#include "maclab/equilibrium.hpp"
#include "maclab/error.hpp"
#include "maclab/grid.hpp"
#include "maclab/lattice.hpp"
#include "maclab/parallel.hpp"

namespace maclab {

template <int D>
struct Kinetics {
  double nu = 0.0;
  double dx = 0.0;
  double e = 0.0;
  double dt = 0.0;
  // Constant pressure gradient dp/dx_i driving the flow, if any.
  std::optional<Vec<D>> pressure_gradient;
  double rho_ref = 1.0;
};

template <int D>
Kinetics<D> derive_kinetics(double nu, double dx, std::optional<Vec<D>> pressure_gradient = std::nullopt) {
  if (!(nu > 0.0)) throw ConfigError("viscosity must be positive");
  if (!(dx > 0.0)) throw ConfigError("lattice spacing must be positive");
  Kinetics<D> k;
  k.nu = nu;
  k.dx = dx;
  k.e = 6.0 * nu / dx;
  k.dt = dx / k.e;
  k.pressure_gradient = pressure_gradient;
  return k;
}

/// Velocities held fixed on PrescribedVelocity nodes.
template <int D>
class BoundarySpec {
 public:
  struct Entry {
    std::size_t node;
    Vec<D> u;
  };

  void prescribe(std::size_t node, const Vec<D>& u) { entries_.push_back({node, u}); }
  std::span<const Entry> entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  std::vector<Entry> entries_;
};

template <int D>
void validate_boundary(const Grid<D>& grid, const BoundarySpec<D>& bc) {
  for (const auto& entry : bc.entries()) {
    if (entry.node >= grid.size())
      throw ConfigError("boundary entry references node " + std::to_string(entry.node) + " outside the grid");
    if (grid.node_class(entry.node) == NodeClass::Fluid)
      throw ConfigError("boundary entry covers fluid node " + std::to_string(entry.node));
  }
}

/// Overwrites velocity on prescribed nodes and sets their density from the
/// interior neighbour along the inward normal (zero normal gradient).
/// Prescribed nodes off the domain faces keep their density.
template <int D>
void apply_prescribed_velocity(FieldBuffer<D>& fields, const Grid<D>& grid, const BoundarySpec<D>& bc) {
  validate_boundary(grid, bc);
  for (const auto& entry : bc.entries()) {
    for (int d = 0; d < D; ++d) fields.u[d][entry.node] = entry.u[d];
    if (auto src = grid.inward_neighbor(entry.node)) fields.rho[entry.node] = fields.rho[*src];
  }
}

namespace detail {

struct StepFault {
  std::size_t node = std::numeric_limits<std::size_t>::max();
  double rho = 0.0;
};

// Row-wise traversal shared by the stepper and the oracle. A "row" is a
// line of nodes along axis 0; rows are indexed by the remaining coordinates.
template <int D>
std::size_t row_count(const Grid<D>& grid) {
  std::size_t rows = 1;
  for (int d = 1; d < D; ++d) rows *= static_cast<std::size_t>(grid.extent(d));
  return rows;
}

// Start index of the upwind row for link hop c, or -1 if it falls off a
// non-periodic face.
template <int D>
std::ptrdiff_t upwind_row_base(const Grid<D>& grid, std::size_t row, const std::type_identity_t<Offset<D>>& c) {
  std::ptrdiff_t base = 0;
  std::ptrdiff_t stride = grid.extent(0);
  for (int d = 1; d < D; ++d) {
    const int coordinate = static_cast<int>(row % static_cast<std::size_t>(grid.extent(d)));
    row /= static_cast<std::size_t>(grid.extent(d));
    const int w = grid.wrapped(d, coordinate - c[d]);
    if (w < 0) return -1;
    base += w * stride;
    stride *= grid.extent(d);
  }
  return base;
}

// Calls fn.template operator()<a>() for a = 0..Q-1 with a as a constant.
template <int Q, class Fn>
inline void for_each_link(Fn&& fn) {
  [&]<int... A>(std::integer_sequence<int, A...>) { (fn.template operator()<A>(), ...); }(std::make_integer_sequence<int, Q>{});
}

// Kernel for a contiguous run of nodes whose upwind neighbours are all in
// range: rho_src[a][k] and u_src[a][d][k] are the upwind values for node k.
template <Lattice L>
void pull_interior(std::size_t count, const std::array<const double*, L::q>& rho_src,
                   const std::array<std::array<const double*, L::dim>, L::q>& u_src, double* __restrict rho_out,
                   const std::array<double*, L::dim>& u_out, double e, double inv_e, const Vec<L::dim>& drive) {
  constexpr int D = L::dim;
  const Vec<D> g = drive;
#pragma GCC ivdep
  for (std::size_t k = 0; k < count; ++k) {
    double rho = 0.0;
    Vec<D> mom{};
    for_each_link<L::q>([&]<int a>() {
      constexpr auto& c = L::directions[a];
      Vec<D> u;
      for (int d = 0; d < D; ++d) u[d] = u_src[a][d][k];
      const double f = equilibrium_link<L, a>(rho_src[a][k], u, inv_e);
      rho += f;
      for (int d = 0; d < D; ++d) {
        if (c[d] > 0) mom[d] += f;
        else if (c[d] < 0) mom[d] -= f;
      }
    });
    const double inv_rho = 1.0 / rho;
    rho_out[k] = rho;
    for (int d = 0; d < D; ++d) u_out[d][k] = (e * mom[d] + g[d]) * inv_rho;
  }
}

inline bool healthy(double rho, double speed_sum) {
  return rho > 0.0 && std::isfinite(rho) && std::isfinite(speed_sum);
}

}  // namespace detail

/// One time step over every fluid node; non-fluid nodes carry their values
/// forward unchanged. Boundary values are applied separately.
template <Lattice L>
void maclab_step(FieldState<L::dim>& fields, const Grid<L::dim>& grid, const Kinetics<L::dim>& kin,
                 int partitions = 1) {
  constexpr int D = L::dim;
  constexpr int Q = L::q;
  if (fields.size() != grid.size()) throw ConfigError("field and grid sizes differ");
  if (!(kin.e > 0.0)) throw ConfigError("particle speed must be positive");

  const FieldBuffer<D>& in = fields.current();
  FieldBuffer<D>& out = fields.scratch();
  const double e = kin.e;
  const double inv_e = 1.0 / e;

  // Velocity increment per step from the pressure gradient: dx/(e rho) * (-dp/dx_i).
  Vec<D> drive{};
  if (kin.pressure_gradient)
    for (int d = 0; d < D; ++d) drive[d] = -(kin.dx / e) * (*kin.pressure_gradient)[d];

  const std::size_t rows = detail::row_count(grid);
  const int nx = grid.extent(0);
  const auto classes = grid.node_classes();
  std::vector<detail::StepFault> faults(static_cast<std::size_t>(std::max(partitions, 1)));

  parallel_for(rows, partitions, [&](std::size_t row_begin, std::size_t row_end, std::size_t part) {
    detail::StepFault& fault = faults[part];
    std::array<std::ptrdiff_t, Q> base{};

    for (std::size_t row = row_begin; row < row_end; ++row) {
      const std::size_t row_start = row * static_cast<std::size_t>(nx);
      bool has_fluid = false;
      for (int i = 0; i < nx && !has_fluid; ++i)
        has_fluid = classes[row_start + static_cast<std::size_t>(i)] == NodeClass::Fluid;
      if (!has_fluid) {
        for (std::size_t n = row_start; n < row_start + static_cast<std::size_t>(nx); ++n) {
          out.rho[n] = in.rho[n];
          for (int d = 0; d < D; ++d) out.u[d][n] = in.u[d][n];
        }
        continue;
      }
      // A row holding fluid is off every non-periodic face, so all of its
      // upwind rows exist.
      for (int a = 0; a < Q; ++a) base[a] = detail::upwind_row_base(grid, row, L::directions[a]);

      // src(a) gives the upwind node index for link a.
      auto update = [&](std::size_t n, auto&& src) {
        double rho = 0.0;
        Vec<D> mom{};
        detail::for_each_link<Q>([&]<int a>() {
          constexpr auto& c = L::directions[a];
          const std::size_t s = src.template operator()<a>();
          Vec<D> u;
          for (int d = 0; d < D; ++d) u[d] = in.u[d][s];
          const double f = equilibrium_link<L, a>(in.rho[s], u, inv_e);
          rho += f;
          for (int d = 0; d < D; ++d) {
            if (c[d] > 0) mom[d] += f;
            else if (c[d] < 0) mom[d] -= f;
          }
        });
        const double inv_rho = 1.0 / rho;
        out.rho[n] = rho;
        for (int d = 0; d < D; ++d) out.u[d][n] = (e * mom[d] + drive[d]) * inv_rho;
      };
      auto carry = [&](std::size_t n) {
        out.rho[n] = in.rho[n];
        for (int d = 0; d < D; ++d) out.u[d][n] = in.u[d][n];
      };

      for (int i : {0, nx - 1}) {
        const std::size_t n = row_start + static_cast<std::size_t>(i);
        if (classes[n] == NodeClass::Fluid)
          update(n, [&]<int a>() {
            return static_cast<std::size_t>(base[a] + grid.wrapped(0, i - L::directions[a][0]));
          });
      }
      // Interior of the row: every upwind index is in range, so update all
      // nodes and restore the non-fluid ones afterwards.
      {
        std::array<const double*, Q> rho_src;
        std::array<std::array<const double*, D>, Q> u_src;
        for (int a = 0; a < Q; ++a) {
          const std::ptrdiff_t off = base[a] + 1 - L::directions[a][0];
          rho_src[a] = in.rho.data() + off;
          for (int d = 0; d < D; ++d) u_src[a][d] = in.u[d].data() + off;
        }
        std::array<double*, D> u_out;
        for (int d = 0; d < D; ++d) u_out[d] = out.u[d].data() + row_start + 1;
        detail::pull_interior<L>(static_cast<std::size_t>(nx - 2), rho_src, u_src, out.rho.data() + row_start + 1,
                                 u_out, e, inv_e, drive);
      }

      for (std::size_t n = row_start; n < row_start + static_cast<std::size_t>(nx); ++n) {
        if (classes[n] != NodeClass::Fluid) {
          carry(n);
          continue;
        }
        double speed_sum = 0.0;
        for (int d = 0; d < D; ++d) speed_sum += out.u[d][n];
        if (!detail::healthy(out.rho[n], speed_sum) && n < fault.node) fault = {n, out.rho[n]};
      }
    }
  });

  for (const auto& f : faults)
    if (f.node != std::numeric_limits<std::size_t>::max()) {
      auto first = std::min_element(faults.begin(), faults.end(),
                                    [](const auto& a, const auto& b) { return a.node < b.node; });
      throw DivergenceError(first->node, fields.step_count() + 1, first->rho);
    }

  fields.swap_buffers(kin.dt);
}

struct StabilityDiagnostic {
  double u_max = 0.0;
  double r_le = 0.0;  // lattice Reynolds number u_max dx / nu
  double mach = 0.0;  // u_max / e
  bool warned = false;
};

/// Diagnostic only; a large lattice Reynolds number is flagged, never fatal.
template <int D>
StabilityDiagnostic stability_report(const FieldBuffer<D>& fields, const Kinetics<D>& kin) {
  StabilityDiagnostic s;
  for (std::size_t n = 0; n < fields.size(); ++n) {
    double uu = 0.0;
    for (int d = 0; d < D; ++d) uu += fields.u[d][n] * fields.u[d][n];
    s.u_max = std::max(s.u_max, std::sqrt(uu));
  }
  s.r_le = s.u_max * kin.dx / kin.nu;
  s.mach = s.u_max / kin.e;
  s.warned = s.r_le >= 1.0;
  return s;
}

template <int D>
StabilityDiagnostic stability_report(const FieldState<D>& fields, const Kinetics<D>& kin, const Grid<D>& grid) {
  if (fields.size() != grid.size()) throw ConfigError("field and grid sizes differ");
  return stability_report(fields.current(), kin);
}

// Neumaier-compensated totals, used by the conservation checks.
template <int D>
double total_mass(const FieldBuffer<D>& fields) {
  double sum = 0.0, comp = 0.0;
  for (double r : fields.rho) {
    const double t = sum + r;
    comp += std::abs(sum) >= std::abs(r) ? (sum - t) + r : (r - t) + sum;
    sum = t;
  }
  return sum + comp;
}

template <int D>
Vec<D> total_momentum(const FieldBuffer<D>& fields) {
  Vec<D> out{};
  for (int d = 0; d < D; ++d) {
    double sum = 0.0, comp = 0.0;
    for (std::size_t n = 0; n < fields.size(); ++n) {
      const double m = fields.rho[n] * fields.u[d][n];
      const double t = sum + m;
      comp += std::abs(sum) >= std::abs(m) ? (sum - t) + m : (m - t) + sum;
      sum = t;
    }
    out[d] = sum + comp;
  }
  return out;
}

/// Grid, kinetics, boundary values and fields bundled into one stepper.
template <Lattice L>
class Solver {
 public:
  static constexpr int D = L::dim;

  Solver(Grid<D> grid, Kinetics<D> kin, BoundarySpec<D> bc = {}, int partitions = 1)
      : grid_(std::move(grid)),
        kin_(std::move(kin)),
        bc_(std::move(bc)),
        fields_(grid_.size(), kin_.rho_ref),
        partitions_(std::max(partitions, 1)) {
    grid_.validate();
    validate_boundary(grid_, bc_);
    apply_prescribed_velocity(fields_.current(), grid_, bc_);
  }

  template <class Init>
  void initialize(Init&& init) {
    auto& buf = fields_.current();
    for (std::size_t n = 0; n < grid_.size(); ++n) buf.set(n, init(grid_.position(n)));
    apply_prescribed_velocity(buf, grid_, bc_);
    fields_.reset_clock();
  }

  void step() {
    maclab_step<L>(fields_, grid_, kin_, partitions_);
    apply_prescribed_velocity(fields_.current(), grid_, bc_);
  }

  void advance(long steps) {
    for (long s = 0; s < steps; ++s) step();
  }

  StabilityDiagnostic stability() const { return stability_report(fields_, kin_, grid_); }

  const Grid<D>& grid() const noexcept { return grid_; }
  const Kinetics<D>& kinetics() const noexcept { return kin_; }
  const BoundarySpec<D>& boundary() const noexcept { return bc_; }
  const FieldState<D>& fields() const noexcept { return fields_; }
  FieldState<D>& fields() noexcept { return fields_; }
  int partitions() const noexcept { return partitions_; }
  void set_partitions(int p) noexcept { partitions_ = std::max(p, 1); }

 private:
  Grid<D> grid_;
  Kinetics<D> kin_;
  BoundarySpec<D> bc_;
  FieldState<D> fields_;
  int partitions_;
};

}  // namespace maclab
