#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>

#include "axiring/elliptic.hpp"
#include "axiring/errors.hpp"
#include "axiring/geometry.hpp"

namespace axiring {

// Targets with r below this fraction of the configuration length scale are
// routed to the on-axis formula; the off-axis kernels carry an r^{-3/2}
// prefactor whose limit is finite but numerically hostile.
inline constexpr double kAxisFloorFraction = 1e-8;

// Green's function of the axisymmetric stream function,
//   G(p, q) = (r rbar)^{1/2} / (2 pi) * F(zeta^2).
// Symmetric in p <-> q.
inline double greens(HalfPlanePoint p, HalfPlanePoint q,
                     Regularization reg = {}) {
  const double s = zeta_sq(p, q, reg);
  if (s == 0.0)
    throw SingularityError("greens: coincident points with epsilon = 0");
  return std::sqrt(p.r * q.r) / (2.0 * std::numbers::pi) * f_kernel(s);
}

// Meridional velocity kernel: the contribution of a unit signed weight
// (omega drbar dzbar) at `source` to (u^r, u^z) at `target`:
//   Kr = (zbar - z) / (pi r^{3/2} rbar^{1/2}) F'(zeta^2)
//   Kz = (r - rbar) / (pi r^{3/2} rbar^{1/2}) F'(zeta^2)
//        + rbar^{1/2} / (4 pi r^{3/2}) [ F(zeta^2) - 2 zeta^2 F'(zeta^2) ]
struct VelocityKernel {
  double kr;
  double kz;
};

inline VelocityKernel velocity_kernel(HalfPlanePoint target,
                                      HalfPlanePoint source,
                                      Regularization reg = {}) {
  if (!(target.r > 0.0))
    throw std::domain_error(
        "velocity_kernel: target on the axis; use axis_velocity");
  if (!(source.r > 0.0))
    throw std::domain_error("velocity_kernel: source must have r > 0");
  const double s = zeta_sq(target, source, reg);
  if (s == 0.0)
    throw SingularityError(
        "velocity_kernel: coincident points with epsilon = 0");
  const FFamily ff = f_family(s);
  const double inv_r32 = 1.0 / (target.r * std::sqrt(target.r));
  const double a = inv_r32 / (std::numbers::pi * std::sqrt(source.r));
  const double b = std::sqrt(source.r) * inv_r32 / (4.0 * std::numbers::pi);
  return {(source.z - target.z) * ff.d1 * a,
          (target.r - source.r) * ff.d1 * a + b * ff.comb};
}

// Axial velocity on the symmetry axis r = 0 from a list of signed weights
// (omega drbar dzbar). The standard coaxial-ring formula:
//   u^z(0, z) = 1/2 * sum_j w_j r_j^2 (r_j^2 + (z - z_j)^2)^{-3/2},
// validated against the off-axis kernel by a continuity test. u^r = 0
// exactly on the axis.
inline double axis_velocity_uz(
    double target_z,
    std::span<const std::pair<HalfPlanePoint, double>> sources) {
  double uz = 0.0;
  for (const auto& [p, w] : sources) {
    const double dz = target_z - p.z;
    const double t = p.r * p.r + dz * dz;
    uz += 0.5 * w * p.r * p.r / (t * std::sqrt(t));
  }
  return uz;
}

// Symmetrization of the u^z kernel in (r, z) <-> (rbar, zbar):
//   H = -(r - rbar)^2 / (2 pi (r rbar)^{3/2}) F'(zeta^2)
//       + (r^2 + rbar^2) / (8 pi (r rbar)^{3/2}) [F(zeta^2) - 2 zeta^2 F'(zeta^2)].
// zbar may be negative (the z-dependence enters only through (z - zbar)^2);
// the monotonicity audit evaluates H at (z, zbar) and (z, -zbar).
inline double h_kernel(double r, double rbar, double z, double zbar,
                       Regularization reg = {}) {
  if (!(r > 0.0) || !(rbar > 0.0))
    throw std::domain_error("h_kernel: requires r, rbar > 0");
  const double dr = r - rbar;
  const double dz = z - zbar;
  const double rr = r * rbar;
  const double s = (dr * dr + dz * dz + reg.epsilon * reg.epsilon) / rr;
  if (s == 0.0)
    throw SingularityError("h_kernel: coincident points with epsilon = 0");
  const FFamily ff = f_family(s);
  const double inv_rr32 = 1.0 / (rr * std::sqrt(rr));
  return (-dr * dr * 0.5 * ff.d1 + (r * r + rbar * rbar) * 0.125 * ff.comb) *
         inv_rr32 / std::numbers::pi;
}

// Both sides of the kernel-comparability estimate
//   int_0^{pi/2} cos^2 th / (X^{1/2} Xbar) dth  <=  C_tau (r rbar)^{tau-3/2} / d^{2 tau}
// for 0 < tau <= 3/2, with d the meridional distance. The constant is
// reported empirically by the audits, never assumed.
struct FEstSides {
  double lhs;
  double rhs;
};

inline FEstSides f_est_quadrature(HalfPlanePoint p, HalfPlanePoint q,
                                  double tau,
                                  const QuadratureSpec& spec = {15, 1e-12}) {
  if (!(tau > 0.0) || !(tau <= 1.5))
    throw std::domain_error("f_est_quadrature: tau must be in (0, 3/2]");
  if (!(p.r > 0.0) || !(q.r > 0.0))
    throw std::domain_error("f_est_quadrature: requires r > 0 on both points");
  const double d2 = meridional_distance_sq(p, q);
  if (d2 == 0.0)
    throw SingularityError("f_est_quadrature: coincident points");
  const double lhs = integrate_adaptive(
      [&](double th) {
        const auto k = kernel_xy(p, q, th);
        const double c = std::cos(th);
        return c * c / (std::sqrt(k.x) * k.xbar);
      },
      0.0, 0.5 * std::numbers::pi, spec);
  const double rhs = std::pow(p.r * q.r, tau - 1.5) / std::pow(d2, tau);
  return {lhs, rhs};
}

}  // namespace axiring
