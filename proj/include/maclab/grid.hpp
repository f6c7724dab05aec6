#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "maclab/equilibrium.hpp"
#include "maclab/error.hpp"
#include "maclab/lattice.hpp"

namespace maclab {

enum class NodeClass : std::uint8_t { Fluid, PrescribedVelocity };

/// Uniform structured grid with nodes at x = i * dx, x fastest in memory.
template <int D>
class Grid {
 public:
  using Index = std::array<int, D>;

  Grid(Index dims, double dx, std::array<bool, D> periodic = {})
      : dims_(dims), dx_(dx), periodic_(periodic) {
    if (!(dx > 0.0)) throw ConfigError("lattice spacing must be positive");
    std::size_t n = 1;
    for (int d = 0; d < D; ++d) {
      if (dims[d] < 3) throw ConfigError("grid needs at least 3 nodes per axis");
      n *= static_cast<std::size_t>(dims[d]);
    }
    classes_.assign(n, NodeClass::Fluid);
    for (int d = 0; d < D; ++d) {
      auto& table = wrap_[d];
      table.resize(static_cast<std::size_t>(dims[d]) + 2);
      for (int i = -1; i <= dims[d]; ++i) {
        int w = i;
        if (i < 0 || i >= dims[d]) w = periodic[d] ? (i + dims[d]) % dims[d] : -1;
        table[static_cast<std::size_t>(i + 1)] = w;
      }
    }
  }

  const Index& dims() const noexcept { return dims_; }
  int extent(int axis) const noexcept { return dims_[axis]; }
  double dx() const noexcept { return dx_; }
  bool periodic(int axis) const noexcept { return periodic_[axis]; }
  std::size_t size() const noexcept { return classes_.size(); }

  std::size_t index(const Index& c) const noexcept {
    std::size_t n = 0;
    for (int d = D - 1; d >= 0; --d) n = n * static_cast<std::size_t>(dims_[d]) + static_cast<std::size_t>(c[d]);
    return n;
  }

  Index coord(std::size_t n) const noexcept {
    Index c{};
    for (int d = 0; d < D; ++d) {
      c[d] = static_cast<int>(n % static_cast<std::size_t>(dims_[d]));
      n /= static_cast<std::size_t>(dims_[d]);
    }
    return c;
  }

  Vec<D> position(std::size_t n) const noexcept {
    const Index c = coord(n);
    Vec<D> x{};
    for (int d = 0; d < D; ++d) x[d] = c[d] * dx_;
    return x;
  }

  /// Coordinate i in [-1, extent] folded onto the grid, or -1 past a
  /// non-periodic edge.
  int wrapped(int axis, int i) const noexcept { return wrap_[axis][static_cast<std::size_t>(i + 1)]; }

  std::optional<std::size_t> neighbor(std::size_t n, const Offset<D>& hop) const noexcept {
    Index c = coord(n);
    for (int d = 0; d < D; ++d) {
      c[d] = wrapped(d, c[d] + hop[d]);
      if (c[d] < 0) return std::nullopt;
    }
    return index(c);
  }

  NodeClass node_class(std::size_t n) const noexcept { return classes_[n]; }
  std::span<const NodeClass> node_classes() const noexcept { return classes_; }
  void set_node_class(std::size_t n, NodeClass c) { classes_.at(n) = c; }

  std::size_t count(NodeClass c) const noexcept {
    std::size_t k = 0;
    for (auto v : classes_) k += v == c;
    return k;
  }

  bool on_wall(std::size_t n) const noexcept {
    const Index c = coord(n);
    for (int d = 0; d < D; ++d)
      if (!periodic_[d] && (c[d] == 0 || c[d] == dims_[d] - 1)) return true;
    return false;
  }

  // Every node on a non-periodic face becomes a prescribed-velocity node.
  void mark_walls() {
    for (std::size_t n = 0; n < size(); ++n)
      if (on_wall(n)) classes_[n] = NodeClass::PrescribedVelocity;
  }

  /// Interior node one hop along the inward normal of a wall node (diagonal
  /// at edges and corners). Nullopt for nodes not on a wall.
  std::optional<std::size_t> inward_neighbor(std::size_t n) const noexcept {
    const Index c = coord(n);
    Offset<D> hop{};
    bool any = false;
    for (int d = 0; d < D; ++d) {
      if (periodic_[d]) continue;
      if (c[d] == 0) hop[d] = 1, any = true;
      else if (c[d] == dims_[d] - 1) hop[d] = -1, any = true;
    }
    if (!any) return std::nullopt;
    return neighbor(n, hop);
  }

  // Pull streaming evaluates all unit hops around a fluid node, so fluid
  // nodes may not sit on a non-periodic face.
  void validate() const {
    for (std::size_t n = 0; n < size(); ++n)
      if (classes_[n] == NodeClass::Fluid && on_wall(n))
        throw ConfigError("fluid node " + std::to_string(n) + " lies on a non-periodic face");
  }

 private:
  Index dims_;
  double dx_;
  std::array<bool, D> periodic_;
  std::vector<NodeClass> classes_;
  std::array<std::vector<int>, D> wrap_;
};

template <int D>
struct FieldBuffer {
  std::vector<double> rho;
  std::array<std::vector<double>, D> u;

  explicit FieldBuffer(std::size_t n = 0, double rho0 = 1.0) : rho(n, rho0) {
    for (auto& c : u) c.assign(n, 0.0);
  }

  std::size_t size() const noexcept { return rho.size(); }

  MacroState<D> state(std::size_t n) const noexcept {
    MacroState<D> s{rho[n], {}};
    for (int d = 0; d < D; ++d) s.u[d] = u[d][n];
    return s;
  }

  void set(std::size_t n, const MacroState<D>& s) noexcept {
    rho[n] = s.rho;
    for (int d = 0; d < D; ++d) u[d][n] = s.u[d];
  }
};

/// Double-buffered density and velocity. The current buffer holds the state
/// at time(); steps write into scratch() and then swap.
template <int D>
class FieldState {
 public:
  explicit FieldState(std::size_t nodes = 0, double rho0 = 1.0) : read_(nodes, rho0), write_(nodes, rho0) {}

  FieldBuffer<D>& current() noexcept { return read_; }
  const FieldBuffer<D>& current() const noexcept { return read_; }
  FieldBuffer<D>& scratch() noexcept { return write_; }

  std::size_t size() const noexcept { return read_.size(); }
  long step_count() const noexcept { return steps_; }
  double time() const noexcept { return time_; }

  void swap_buffers(double dt) noexcept {
    std::swap(read_, write_);
    ++steps_;
    time_ = static_cast<double>(steps_) * dt;
  }

  void reset_clock() noexcept {
    steps_ = 0;
    time_ = 0.0;
  }

 private:
  FieldBuffer<D> read_;
  FieldBuffer<D> write_;
  long steps_ = 0;
  double time_ = 0.0;
};

}  // namespace maclab
