#pragma once

// Classical single-relaxation-time lattice Boltzmann with stored populations:
//   f_a(x + c_a, t + dt) = f_a(x, t) + (feq_a(x, t) - f_a(x, t)) / tau.
// It exists to check the macroscopic stepper, which it must reproduce for
// tau = 1, and shares that stepper's boundary closure.

#include <cstddef>
#include <limits>
#include <vector>

#include "maclab/core.hpp"
#include "maclab/equilibrium.hpp"
#include "maclab/error.hpp"
#include "maclab/grid.hpp"
#include "maclab/lattice.hpp"

namespace maclab {

template <Lattice L>
struct DistributionState {
  static constexpr int D = L::dim;

  // Populations stored link-major: f[a * nodes + n].
  std::vector<double> f;
  std::vector<double> post;
  // Macroscopic state used by the next collision; includes any body-force shift.
  FieldBuffer<D> macro;
  double tau = 1.0;
  long steps = 0;
  double time = 0.0;

  std::size_t nodes() const noexcept { return macro.size(); }
  double& at(int a, std::size_t n) noexcept { return f[static_cast<std::size_t>(a) * nodes() + n]; }
  double at(int a, std::size_t n) const noexcept { return f[static_cast<std::size_t>(a) * nodes() + n]; }

  EquilibriumVector<L> populations(std::size_t n) const {
    EquilibriumVector<L> v{};
    for (int a = 0; a < L::q; ++a) v[a] = at(a, n);
    return v;
  }
};

template <Lattice L>
DistributionState<L> srt_init(const FieldBuffer<L::dim>& fields, double e, double tau = 1.0) {
  if (!(tau > 0.5)) throw ConfigError("relaxation time must exceed 1/2");
  DistributionState<L> s;
  s.macro = fields;
  s.tau = tau;
  const std::size_t n_nodes = fields.size();
  s.f.resize(static_cast<std::size_t>(L::q) * n_nodes);
  s.post.resize(s.f.size());
  for (std::size_t n = 0; n < n_nodes; ++n) {
    const auto feq = equilibrium<L>(fields.state(n), e);
    for (int a = 0; a < L::q; ++a) s.at(a, n) = feq[a];
  }
  return s;
}

template <Lattice L>
DistributionState<L> srt_init(const FieldState<L::dim>& fields, double e, double tau = 1.0) {
  return srt_init<L>(fields.current(), e, tau);
}

/// Viscosity implied by relaxation time tau: nu = (2 tau - 1) e dx / 6.
inline double srt_viscosity(double tau, double e, double dx) { return (2.0 * tau - 1.0) * e * dx / 6.0; }

template <Lattice L>
void srt_step(DistributionState<L>& s, const Grid<L::dim>& grid, const Kinetics<L::dim>& kin,
              const BoundarySpec<L::dim>& bc = {}, int partitions = 1) {
  constexpr int D = L::dim;
  constexpr int Q = L::q;
  if (s.nodes() != grid.size()) throw ConfigError("distribution and grid sizes differ");
  const std::size_t N = grid.size();
  const double e = kin.e;
  const double inv_e = 1.0 / e;
  const double omega = 1.0 / s.tau;
  const auto classes = grid.node_classes();

  // Collision. Non-fluid nodes emit their equilibrium, as in the macroscopic stepper.
  parallel_for(N, partitions, [&](std::size_t b, std::size_t end, std::size_t) {
    for (std::size_t n = b; n < end; ++n) {
      const auto st = s.macro.state(n);
      for (int a = 0; a < Q; ++a) {
        const double feq = equilibrium_link<L>(a, st.rho, st.u, inv_e);
        const std::size_t k = static_cast<std::size_t>(a) * N + n;
        s.post[k] = classes[n] == NodeClass::Fluid ? s.f[k] + omega * (feq - s.f[k]) : feq;
      }
    }
  });

  Vec<D> drive{};
  const bool forced = kin.pressure_gradient.has_value();
  if (forced)
    for (int d = 0; d < D; ++d) drive[d] = -(kin.dx / e) * (*kin.pressure_gradient)[d];

  // Pull streaming, then moments.
  const std::size_t rows = detail::row_count(grid);
  const int nx = grid.extent(0);
  std::vector<detail::StepFault> faults(static_cast<std::size_t>(std::max(partitions, 1)));
  parallel_for(rows, partitions, [&](std::size_t row_begin, std::size_t row_end, std::size_t part) {
    std::array<std::ptrdiff_t, Q> base{};
    for (std::size_t row = row_begin; row < row_end; ++row) {
      for (int a = 0; a < Q; ++a) base[a] = detail::upwind_row_base(grid, row, L::directions[a]);
      for (int i = 0; i < nx; ++i) {
        const std::size_t n = row * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
        if (classes[n] != NodeClass::Fluid) {
          for (int a = 0; a < Q; ++a) s.f[static_cast<std::size_t>(a) * N + n] = s.post[static_cast<std::size_t>(a) * N + n];
          continue;
        }
        double rho = 0.0;
        Vec<D> mom{};
        for (int a = 0; a < Q; ++a) {
          const std::size_t src = static_cast<std::size_t>(base[a] + grid.wrapped(0, i - L::directions[a][0]));
          const double f = s.post[static_cast<std::size_t>(a) * N + src];
          s.f[static_cast<std::size_t>(a) * N + n] = f;
          rho += f;
          for (int d = 0; d < D; ++d) mom[d] += L::directions[a][d] * f;
        }
        double speed_sum = 0.0;
        s.macro.rho[n] = rho;
        for (int d = 0; d < D; ++d) {
          double v = e * mom[d] / rho;
          if (forced) v += drive[d] / rho;
          s.macro.u[d][n] = v;
          speed_sum += v;
        }
        auto& fault = faults[part];
        if (!detail::healthy(rho, speed_sum) && n < fault.node) fault = {n, rho};
      }
    }
  });

  for (const auto& f : faults)
    if (f.node != std::numeric_limits<std::size_t>::max()) {
      std::size_t worst = std::numeric_limits<std::size_t>::max();
      double rho = 0.0;
      for (const auto& g : faults)
        if (g.node < worst) worst = g.node, rho = g.rho;
      throw DivergenceError(worst, s.steps + 1, rho);
    }

  apply_prescribed_velocity(s.macro, grid, bc);
  ++s.steps;
  s.time = static_cast<double>(s.steps) * kin.dt;
}

}  // namespace maclab
