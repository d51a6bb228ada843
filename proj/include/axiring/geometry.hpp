#pragma once

#include <cmath>
#include <stdexcept>

namespace axiring {

// A meridional point (r, z) in the half-plane Pi = { r >= 0 }.
struct HalfPlanePoint {
  double r = 0.0;
  double z = 0.0;
};

inline HalfPlanePoint mirror(HalfPlanePoint p) { return {p.r, -p.z}; }

// Vortex-blob regularization: epsilon^2 is added to the squared distance
// inside zeta^2, which preserves the symmetry and the (r rbar) scaling of
// the kernel argument. epsilon = 0 is valid only for point-separated
// evaluation.
struct Regularization {
  double epsilon = 0.0;
};

// The four quadratic forms entering the symmetrized kernel estimates:
//   X    = r^2 + rbar^2 - 2 r rbar cos(th) + (z - zbar)^2
//   Xbar = r^2 + rbar^2 + 2 r rbar cos(th) + (z - zbar)^2
//   Y    = r^2 + rbar^2 - 2 r rbar cos(th) + (z + zbar)^2
//   Ybar = r^2 + rbar^2 + 2 r rbar cos(th) + (z + zbar)^2
struct KernelXY {
  double x;
  double xbar;
  double y;
  double ybar;
};

inline KernelXY kernel_xy(HalfPlanePoint p, HalfPlanePoint q, double theta) {
  const double rr = p.r * p.r + q.r * q.r;
  const double cross = 2.0 * p.r * q.r * std::cos(theta);
  const double dzm = (p.z - q.z) * (p.z - q.z);
  const double dzp = (p.z + q.z) * (p.z + q.z);
  return {rr - cross + dzm, rr + cross + dzm, rr - cross + dzp,
          rr + cross + dzp};
}

// zeta^2 = ((r - rbar)^2 + (z - zbar)^2 + eps^2) / (r rbar).
inline double zeta_sq(HalfPlanePoint p, HalfPlanePoint q,
                      Regularization reg = {}) {
  if (!(p.r > 0.0) || !(q.r > 0.0))
    throw std::domain_error("zeta_sq: requires r > 0 on both points");
  const double dr = p.r - q.r;
  const double dz = p.z - q.z;
  return (dr * dr + dz * dz + reg.epsilon * reg.epsilon) / (p.r * q.r);
}

inline double meridional_distance_sq(HalfPlanePoint p, HalfPlanePoint q) {
  const double dr = p.r - q.r;
  const double dz = p.z - q.z;
  return dr * dr + dz * dz;
}

}  // namespace axiring
