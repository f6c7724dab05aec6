#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "maclab/error.hpp"

namespace maclab::analytic {

struct CouetteParams {
  double h = 1.0;
  double u0 = 0.1;
  double dpdx = 0.0;
  double rho = 1.0;
  double nu = 0.01;
};

/// Plane Couette-Poiseuille profile between a fixed plate at y = 0 and a
/// plate moving at u0 at y = h:
///   u(y) = u0 y / h + dp/dx (y^2 - h y) / (2 rho nu).
inline double couette_profile(double y, const CouetteParams& p) {
  if (!(p.h > 0.0)) throw DomainError("plate gap must be positive");
  if (!(y >= 0.0 && y <= p.h)) throw DomainError("y outside [0, h]");
  double u = p.u0 / p.h * y;
  if (p.dpdx != 0.0) {
    if (!(p.nu > 0.0)) throw DomainError("viscosity must be positive with a pressure gradient");
    u += p.dpdx * (y * y - p.h * y) / (2.0 * p.rho * p.nu);
  }
  return u;
}

struct TaylorGreenParams {
  double u0 = 0.05;
  double nu = 0.0314;
};

// Decaying vortex on a 2pi x 2pi periodic square.
inline std::array<double, 2> taylor_green(double x, double y, double t, const TaylorGreenParams& p) {
  if (t < 0.0) throw DomainError("time must be nonnegative");
  const double decay = std::exp(-2.0 * p.nu * t);
  return {-p.u0 * std::cos(x) * std::sin(y) * decay, p.u0 * std::sin(x) * std::cos(y) * decay};
}

inline constexpr double taylor_green_period = 2.0 * std::numbers::pi;

}  // namespace maclab::analytic
