#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "axiring/elliptic.hpp"
#include "axiring/errors.hpp"
#include "axiring/kernels.hpp"
#include "axiring/parallel.hpp"
#include "axiring/particles.hpp"

namespace axiring {

struct Velocity {
  double ur = 0.0;
  double uz = 0.0;
};

namespace detail {

// Structure-of-arrays view of the source particles of one RK stage. The odd
// mirror image of every source (weight -mu at (r, -z)) is folded into the
// inner loop rather than materialized.
struct SourceArrays {
  std::vector<double> r, z, mu, sqrt_r, inv_sqrt_r;
  double eps2 = 0.0;

  void assign(std::span<const double> rs, std::span<const double> zs,
              std::span<const double> mus, double epsilon) {
    const std::size_t n = rs.size();
    r.assign(rs.begin(), rs.end());
    z.assign(zs.begin(), zs.end());
    mu.assign(mus.begin(), mus.end());
    sqrt_r.resize(n);
    inv_sqrt_r.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      sqrt_r[j] = std::sqrt(r[j]);
      inv_sqrt_r[j] = 1.0 / sqrt_r[j];
    }
    eps2 = epsilon * epsilon;
  }
};

// Velocity at one off-axis target; sources ascending, each followed by its
// image, so the reduction order is canonical.
inline Velocity velocity_at_point(const SourceArrays& s, double tr,
                                  double tz) {
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
  const double inv_r32 = 1.0 / (tr * std::sqrt(tr));
  const double a0 = inv_r32 / std::numbers::pi;
  const double b0 = 0.25 * a0;
  double ur = 0.0, uz = 0.0;
  const std::size_t n = s.r.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double dr = tr - s.r[j];
    const double inv_rr = 1.0 / (tr * s.r[j]);
    const double dzm = tz - s.z[j];
    const double dzp = tz + s.z[j];
    const double sm = (dr * dr + dzm * dzm + s.eps2) * inv_rr;
    const double sp = (dr * dr + dzp * dzp + s.eps2) * inv_rr;
    // must not throw inside a parallel region: mark runaway states (negative
    // radii, coincident unregularized points) and let the stepper report
    if (!(sm > 0.0) || !(sp > 0.0)) return {kNan, kNan};
    const FFamily fm = f_family(sm);
    const FFamily fp = f_family(sp);
    const double a = a0 * s.inv_sqrt_r[j];
    const double b = b0 * s.sqrt_r[j];
    const double kr_src = (s.z[j] - tz) * fm.d1 * a;
    const double kz_src = dr * fm.d1 * a + b * fm.comb;
    const double kr_img = (-s.z[j] - tz) * fp.d1 * a;
    const double kz_img = dr * fp.d1 * a + b * fp.comb;
    ur += (kr_src - kr_img) * s.mu[j];
    uz += (kz_src - kz_img) * s.mu[j];
  }
  return {ur, uz};
}

inline Velocity axis_velocity_at(const SourceArrays& s, double tz) {
  double uz = 0.0;
  const std::size_t n = s.r.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double r2 = s.r[j] * s.r[j];
    const double dm = tz - s.z[j];
    const double dp = tz + s.z[j];
    const double tm = r2 + dm * dm;
    const double tp = r2 + dp * dp;
    uz += 0.5 * s.mu[j] * r2 / (tm * std::sqrt(tm));
    uz -= 0.5 * s.mu[j] * r2 / (tp * std::sqrt(tp));
  }
  return {0.0, uz};
}

inline void eval_velocities(const SourceArrays& src,
                            std::span<const double> tr,
                            std::span<const double> tz, double axis_floor,
                            std::span<Velocity> out) {
  parallel_for(static_cast<long>(tr.size()), [&](long i) {
    out[i] = (tr[i] < axis_floor) ? axis_velocity_at(src, tz[i])
                                  : velocity_at_point(src, tr[i], tz[i]);
  });
}

}  // namespace detail

// (u^r, u^z) induced by the system (sources plus their odd images) at an
// arbitrary target. Targets with r below the axis floor get the on-axis
// formula, for which u^r = 0 exactly.
inline Velocity velocity_at(const ParticleSystem& sys, HalfPlanePoint target) {
  detail::SourceArrays src;
  std::vector<double> r(sys.particles.size()), z(sys.particles.size()),
      mu(sys.particles.size());
  for (std::size_t j = 0; j < sys.particles.size(); ++j) {
    r[j] = sys.particles[j].pos.r;
    z[j] = sys.particles[j].pos.z;
    mu[j] = sys.particles[j].weight();
  }
  src.assign(r, z, mu, sys.reg.epsilon);
  const double floor = kAxisFloorFraction * sys.length_scale;
  return (target.r < floor) ? detail::axis_velocity_at(src, target.z)
                            : detail::velocity_at_point(src, target.r, target.z);
}

// Velocities at all particle positions (the flux diagnostics path).
inline std::vector<Velocity> velocities_at_particles(
    const ParticleSystem& sys) {
  const std::size_t n = sys.particles.size();
  std::vector<double> r(n), z(n), mu(n);
  for (std::size_t j = 0; j < n; ++j) {
    r[j] = sys.particles[j].pos.r;
    z[j] = sys.particles[j].pos.z;
    mu[j] = sys.particles[j].weight();
  }
  detail::SourceArrays src;
  src.assign(r, z, mu, sys.reg.epsilon);
  std::vector<Velocity> out(n);
  detail::eval_velocities(src, r, z, kAxisFloorFraction * sys.length_scale,
                          out);
  return out;
}

enum class ReflectionPolicy { reflect, none };

struct StepInfo {
  int reflections = 0;
  double max_speed = 0.0;  // over particles, at the first stage
};

// Classical four-stage Runge-Kutta on all particle positions; xi0 and volume
// are never touched. Particles ending the step at z < 0 are folded back to
// z >= 0 and counted (u^z vanishes on z = 0, so any crossing is integrator
// error, not dynamics).
inline StepInfo step_rk4(ParticleSystem& sys, double dt,
                         ReflectionPolicy policy = ReflectionPolicy::reflect) {
  StepInfo info;
  const std::size_t n = sys.particles.size();
  sys.time += dt;
  if (n == 0) return info;

  std::vector<double> r0(n), z0(n), mu(n), rs(n), zs(n);
  for (std::size_t j = 0; j < n; ++j) {
    r0[j] = sys.particles[j].pos.r;
    z0[j] = sys.particles[j].pos.z;
    mu[j] = sys.particles[j].weight();
  }
  const double floor = kAxisFloorFraction * sys.length_scale;
  detail::SourceArrays src;
  std::vector<Velocity> k1(n), k2(n), k3(n), k4(n);

  auto stage = [&](const std::vector<double>& r, const std::vector<double>& z,
                   std::vector<Velocity>& k) {
    src.assign(r, z, mu, sys.reg.epsilon);
    detail::eval_velocities(src, r, z, floor, k);
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(k[j].ur) || !std::isfinite(k[j].uz))
        throw IntegrationError(j, "step_rk4: non-finite velocity at particle " +
                                      std::to_string(j));
  };

  stage(r0, z0, k1);
  for (std::size_t j = 0; j < n; ++j)
    info.max_speed =
        std::max(info.max_speed, std::hypot(k1[j].ur, k1[j].uz));

  for (std::size_t j = 0; j < n; ++j) {
    rs[j] = r0[j] + 0.5 * dt * k1[j].ur;
    zs[j] = z0[j] + 0.5 * dt * k1[j].uz;
  }
  stage(rs, zs, k2);
  for (std::size_t j = 0; j < n; ++j) {
    rs[j] = r0[j] + 0.5 * dt * k2[j].ur;
    zs[j] = z0[j] + 0.5 * dt * k2[j].uz;
  }
  stage(rs, zs, k3);
  for (std::size_t j = 0; j < n; ++j) {
    rs[j] = r0[j] + dt * k3[j].ur;
    zs[j] = z0[j] + dt * k3[j].uz;
  }
  stage(rs, zs, k4);

  const double w = dt / 6.0;
  for (std::size_t j = 0; j < n; ++j) {
    double r = r0[j] + w * (k1[j].ur + 2.0 * k2[j].ur + 2.0 * k3[j].ur +
                            k4[j].ur);
    double z = z0[j] + w * (k1[j].uz + 2.0 * k2[j].uz + 2.0 * k3[j].uz +
                            k4[j].uz);
    if (policy == ReflectionPolicy::reflect && z < 0.0) {
      z = -z;
      ++info.reflections;
    }
    sys.particles[j].pos = {r, z};
  }
  sys.reflection_count += info.reflections;
  return info;
}

// Advisory time-step bound dt <= 0.5 eps / max|u|.
inline double advisory_dt_bound(double epsilon, double max_speed) {
  if (!(max_speed > 0.0)) return std::numeric_limits<double>::infinity();
  return 0.5 * epsilon / max_speed;
}

}  // namespace axiring
