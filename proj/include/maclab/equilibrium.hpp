#pragma once

#include <array>
#include <cmath>
#include <span>
#include <utility>

#include "maclab/error.hpp"
#include "maclab/lattice.hpp"

namespace maclab {

template <int D>
using Vec = std::array<double, D>;

template <int D>
struct MacroState {
  double rho = 1.0;
  Vec<D> u{};
};

template <Lattice L>
using EquilibriumVector = std::array<double, L::q>;

/// Equilibrium population on link `a`, with inv_e = 1/e.
///
/// feq = w rho (1 + 3 (c.u)/e + 9/2 (c.u)^2/e^2 - 3/2 u.u/e^2) where c is the
/// unit hop, i.e. the physical link velocity divided by e.
template <Lattice L>
inline double equilibrium_link(int a, double rho, const Vec<L::dim>& u, double inv_e) noexcept {
  double cu = 0.0;
  double uu = 0.0;
  for (int d = 0; d < L::dim; ++d) {
    if (L::directions[a][d] > 0) cu += u[d];
    else if (L::directions[a][d] < 0) cu -= u[d];
    uu += u[d] * u[d];
  }
  cu *= inv_e;
  uu *= inv_e * inv_e;
  return L::weights[a] * rho * (1.0 + 3.0 * cu + 4.5 * cu * cu - 1.5 * uu);
}

// Same evaluation with the link fixed at compile time, for the stepping kernels.
template <Lattice L, int A>
inline double equilibrium_link(double rho, const Vec<L::dim>& u, double inv_e) noexcept {
  constexpr auto& c = L::directions[A];
  double cu = 0.0;
  double uu = 0.0;
  [&]<int... d>(std::integer_sequence<int, d...>) {
    ((c[d] > 0 ? (cu += u[d]) : c[d] < 0 ? (cu -= u[d]) : cu), ...);
    ((uu += u[d] * u[d]), ...);
  }(std::make_integer_sequence<int, L::dim>{});
  cu *= inv_e;
  uu *= inv_e * inv_e;
  return L::weights[A] * rho * (1.0 + 3.0 * cu + 4.5 * cu * cu - 1.5 * uu);
}

template <Lattice L>
EquilibriumVector<L> equilibrium(const MacroState<L::dim>& state, double e) {
  if (!(e > 0.0)) throw ConfigError("particle speed must be positive");
  const double inv_e = 1.0 / e;
  EquilibriumVector<L> feq{};
  for (int a = 0; a < L::q; ++a) feq[a] = equilibrium_link<L>(a, state.rho, state.u, inv_e);
  return feq;
}

/// Density and velocity carried by a population vector.
template <Lattice L>
MacroState<L::dim> moments(std::span<const double, L::q> f, double e) {
  MacroState<L::dim> m{0.0, {}};
  for (int a = 0; a < L::q; ++a) {
    m.rho += f[a];
    for (int d = 0; d < L::dim; ++d) m.u[d] += L::directions[a][d] * f[a];
  }
  if (m.rho == 0.0) throw DegenerateDensityError("population vector sums to zero");
  for (int d = 0; d < L::dim; ++d) m.u[d] *= e / m.rho;
  return m;
}

template <Lattice L>
MacroState<L::dim> moments(const EquilibriumVector<L>& f, double e) {
  return moments<L>(std::span<const double, L::q>(f), e);
}

/// Sum over links of e_ai e_aj f_a.
template <Lattice L>
std::array<Vec<L::dim>, L::dim> second_moment(const EquilibriumVector<L>& f, double e) {
  std::array<Vec<L::dim>, L::dim> m{};
  for (int a = 0; a < L::q; ++a)
    for (int i = 0; i < L::dim; ++i)
      for (int j = 0; j < L::dim; ++j)
        m[i][j] += e * e * L::directions[a][i] * L::directions[a][j] * f[a];
  return m;
}

/// Equation-of-state pressure p = rho e^2 / 3.
inline double pressure(double rho, double e) { return rho * e * e / 3.0; }

}  // namespace maclab
