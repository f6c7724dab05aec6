#pragma once

// Discrete velocity sets for D2Q9 and D3Q19. Directions are unit lattice hops;
// the particle speed e scales them only inside equilibrium and moment sums.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "maclab/error.hpp"

namespace maclab {

enum class LatticeModel { D2Q9, D3Q19 };

struct Rational {
  std::int64_t num;
  std::int64_t den;

  constexpr double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

template <int D>
using Offset = std::array<int, D>;

namespace detail {

template <int D, std::size_t Q>
constexpr std::array<int, Q> opposite_table(const std::array<Offset<D>, Q>& dirs) {
  std::array<int, Q> opp{};
  for (std::size_t a = 0; a < Q; ++a) {
    opp[a] = -1;
    for (std::size_t b = 0; b < Q; ++b) {
      bool reversed = true;
      for (int d = 0; d < D; ++d) reversed = reversed && dirs[b][d] == -dirs[a][d];
      if (reversed) opp[a] = static_cast<int>(b);
    }
  }
  return opp;
}

template <std::size_t Q>
constexpr std::array<double, Q> to_double(const std::array<Rational, Q>& w) {
  std::array<double, Q> out{};
  for (std::size_t a = 0; a < Q; ++a) out[a] = w[a].value();
  return out;
}

}  // namespace detail

/// Nine-velocity square lattice, links ordered 0 (rest), 1-4 (axes), 5-8 (diagonals).
struct D2Q9 {
  static constexpr LatticeModel model = LatticeModel::D2Q9;
  static constexpr int dim = 2;
  static constexpr int q = 9;
  static constexpr std::array<Offset<2>, 9> directions{{
      {0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};
  static constexpr std::array<Rational, 9> exact_weights{{
      {4, 9}, {1, 9}, {1, 9}, {1, 9}, {1, 9}, {1, 36}, {1, 36}, {1, 36}, {1, 36}}};
  static constexpr std::array<double, 9> weights = detail::to_double(exact_weights);
  static constexpr std::array<int, 9> opposite = detail::opposite_table<2>(directions);
};

/// Nineteen-velocity cubic lattice, links ordered 0 (rest), 1-6 (axes), 7-18 (edge diagonals).
struct D3Q19 {
  static constexpr LatticeModel model = LatticeModel::D3Q19;
  static constexpr int dim = 3;
  static constexpr int q = 19;
  static constexpr std::array<Offset<3>, 19> directions{{
      {0, 0, 0},
      {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1},
      {1, 1, 0}, {-1, -1, 0}, {-1, 1, 0}, {1, -1, 0},
      {0, 1, 1}, {0, -1, -1}, {0, -1, 1}, {0, 1, -1},
      {1, 0, 1}, {-1, 0, -1}, {-1, 0, 1}, {1, 0, -1}}};
  static constexpr std::array<Rational, 19> exact_weights{{
      {1, 3},
      {1, 18}, {1, 18}, {1, 18}, {1, 18}, {1, 18}, {1, 18},
      {1, 36}, {1, 36}, {1, 36}, {1, 36}, {1, 36}, {1, 36},
      {1, 36}, {1, 36}, {1, 36}, {1, 36}, {1, 36}, {1, 36}}};
  static constexpr std::array<double, 19> weights = detail::to_double(exact_weights);
  static constexpr std::array<int, 19> opposite = detail::opposite_table<3>(directions);
};

template <class L>
concept Lattice = requires {
  { L::dim } -> std::convertible_to<int>;
  { L::q } -> std::convertible_to<int>;
  L::directions;
  L::weights;
  L::opposite;
};

/// Runtime view of a lattice, for code that selects the model from configuration.
struct Stencil {
  LatticeModel model_id;
  int dim;
  int q;
  std::vector<std::array<int, 3>> directions;  // unused trailing components are zero
  std::vector<double> weights;
  std::vector<Rational> exact_weights;
  std::vector<int> opposite;
};

template <Lattice L>
Stencil make_stencil() {
  Stencil s{L::model, L::dim, L::q, {}, {}, {}, {}};
  for (int a = 0; a < L::q; ++a) {
    std::array<int, 3> c{0, 0, 0};
    for (int d = 0; d < L::dim; ++d) c[d] = L::directions[a][d];
    s.directions.push_back(c);
    s.weights.push_back(L::weights[a]);
    s.exact_weights.push_back(L::exact_weights[a]);
    s.opposite.push_back(L::opposite[a]);
  }
  return s;
}

inline Stencil build_stencil(LatticeModel model_id) {
  switch (model_id) {
    case LatticeModel::D2Q9:
      return make_stencil<D2Q9>();
    case LatticeModel::D3Q19:
      return make_stencil<D3Q19>();
  }
  throw ConfigError("unknown lattice model id " + std::to_string(static_cast<int>(model_id)));
}

inline std::string_view to_string(LatticeModel m) {
  return m == LatticeModel::D2Q9 ? "D2Q9" : "D3Q19";
}

inline LatticeModel parse_lattice_model(std::string_view name) {
  std::string up(name);
  for (auto& ch : up) ch = static_cast<char>(ch >= 'a' && ch <= 'z' ? ch - 'a' + 'A' : ch);
  if (up == "D2Q9") return LatticeModel::D2Q9;
  if (up == "D3Q19") return LatticeModel::D3Q19;
  throw ConfigError("unknown lattice model '" + std::string(name) + "'");
}

inline Stencil build_stencil(std::string_view name) { return build_stencil(parse_lattice_model(name)); }

}  // namespace maclab
