#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "axiring/errors.hpp"
#include "axiring/kernels.hpp"

namespace axiring {

// Thin-filament model of an anti-parallel ring pair. The tracked ring is the
// upper one: radius R, height +Z, circulation -Gamma (Gamma > 0), core
// radius a; its mirror partner at -Z carries +Gamma.
struct FilamentPairState {
  double R = 1.0;      // ring radius
  double Z = 1.0;      // half-separation; upper ring at +Z
  double gamma = 1.0;  // circulation magnitude
  double a0 = 0.05;    // initial core radius
  double r0 = 1.0;     // initial ring radius
};

inline void validate(const FilamentPairState& s) {
  if (!(s.R > 0.0) || !(s.Z > 0.0) || !(s.gamma >= 0.0) || !(s.a0 > 0.0) ||
      !(s.r0 > 0.0))
    throw std::domain_error(
        "FilamentPairState: R, Z, a0, R0 must be > 0 and Gamma >= 0");
}

// Kelvin self-induction speed of a thin ring,
//   u^z = Gamma / (4 pi R) (ln(8R/a) - 1/4),
// without the O(a/R) correction. A ring of negative circulation translates
// toward -z at this speed.
inline double self_induction(double R, double gamma, double a) {
  if (!(a > 0.0) || !(a < R))
    throw std::domain_error("self_induction: requires 0 < a < R");
  return gamma / (4.0 * std::numbers::pi * R) * (std::log(8.0 * R / a) - 0.25);
}

// Velocity induced at the upper ring by its mirror partner only, through the
// exact circular-filament kernel (point source at (R, -Z), weight +Gamma).
struct MutualVelocity {
  double dR;
  double dZ;
};

inline MutualVelocity mutual_induction(const FilamentPairState& s) {
  validate(s);
  if (!(s.Z > 0.0))
    throw SingularityError("mutual_induction: ring collision at Z = 0");
  const VelocityKernel k =
      velocity_kernel({s.R, s.Z}, {s.R, -s.Z}, Regularization{0.0});
  return {k.kr * s.gamma, k.kz * s.gamma};
}

// Core radius under meridional core-volume conservation, a = a0 sqrt(R0/R):
// the stretching ring must thin its core, which is what makes the fixed-core
// approximation self-inconsistent.
inline double core_radius(const FilamentPairState& s) {
  if (!(s.R > 0.0)) throw std::domain_error("core_radius: requires R > 0");
  return s.a0 * std::sqrt(s.r0 / s.R);
}

enum class CoreModel { fixed, shrinking };

struct DysonSample {
  double t;
  double R;
  double Z;
  double a;
  double uz_self;
};

struct DysonResult {
  std::vector<DysonSample> series;
  bool collision = false;
};

// RK4 on (R, Z):
//   dR/dt = mutual dR,
//   dZ/dt = mutual dZ - self_induction(R, Gamma, a),
// the self term acting purely along the ring axis (downward for the upper,
// negative-circulation ring). Terminates with the collision flag if any
// stage reaches Z <= 0.
inline DysonResult integrate(FilamentPairState state, double dt, double t_max,
                             CoreModel core) {
  validate(state);
  if (!(dt > 0.0)) throw std::domain_error("dyson::integrate: dt must be > 0");
  if (!(t_max >= 0.0))
    throw std::domain_error("dyson::integrate: t_max must be >= 0");
  if (state.a0 > state.r0 / 10.0)
    std::fprintf(stderr,
                 "warning: core radius a0 = %g exceeds R0/10; thin-core "
                 "model is marginal\n",
                 state.a0);

  DysonResult result;
  const long n_steps = std::lround(t_max / dt);

  auto core_of = [&](double R) {
    if (core == CoreModel::fixed) return state.a0;
    FilamentPairState tmp = state;
    tmp.R = R;
    return core_radius(tmp);
  };
  struct Rhs {
    double dR, dZ;
    bool ok;
  };
  auto rhs = [&](double R, double Z) -> Rhs {
    if (!(Z > 0.0) || !(R > 0.0)) return {0.0, 0.0, false};
    FilamentPairState s = state;
    s.R = R;
    s.Z = Z;
    const MutualVelocity m = mutual_induction(s);
    return {m.dR, m.dZ - self_induction(R, state.gamma, core_of(R)), true};
  };

  auto sample = [&](double t, double R, double Z) {
    result.series.push_back(
        {t, R, Z, core_of(R), self_induction(R, state.gamma, core_of(R))});
  };

  double R = state.R, Z = state.Z;
  sample(0.0, R, Z);
  for (long step = 1; step <= n_steps; ++step) {
    if (state.gamma == 0.0) {  // exact fixed point
      sample(step * dt, R, Z);
      continue;
    }
    const Rhs k1 = rhs(R, Z);
    const Rhs k2 = k1.ok ? rhs(R + 0.5 * dt * k1.dR, Z + 0.5 * dt * k1.dZ) : k1;
    const Rhs k3 = k2.ok ? rhs(R + 0.5 * dt * k2.dR, Z + 0.5 * dt * k2.dZ) : k2;
    const Rhs k4 = k3.ok ? rhs(R + dt * k3.dR, Z + dt * k3.dZ) : k3;
    if (!k1.ok || !k2.ok || !k3.ok || !k4.ok) {
      result.collision = true;
      return result;
    }
    R += dt / 6.0 * (k1.dR + 2.0 * k2.dR + 2.0 * k3.dR + k4.dR);
    Z += dt / 6.0 * (k1.dZ + 2.0 * k2.dZ + 2.0 * k3.dZ + k4.dZ);
    if (!(Z > 0.0)) {
      result.collision = true;
      return result;
    }
    sample(step * dt, R, Z);
  }
  return result;
}

}  // namespace axiring
