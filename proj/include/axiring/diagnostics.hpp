#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "axiring/elliptic.hpp"
#include "axiring/errors.hpp"
#include "axiring/evolution.hpp"
#include "axiring/parallel.hpp"
#include "axiring/particles.hpp"

namespace axiring {

// One output row of the time series. L^p norms of omega are taken over the
// upper half-space representation, 2 pi sum (r |xi0|)^p V; the lower half is
// the mirror image and carries no extra information.
struct TimeSeriesRecord {
  double t = 0.0;
  double P = 0.0;           // radial impulse  sum -r^2 mu
  double Z = 0.0;           // axial impulse   sum -z mu
  double E = 0.0;           // kinetic energy (regularized, self-terms included)
  double Gamma = 0.0;       // circulation     sum mu
  double Rmax = 0.0;        // support radius  max r
  double omega_linf = 0.0;  // max r |xi0|
  double omega_l2 = 0.0;
  double Pdot = 0.0;        // flux formula  sum -2 r u^r mu
  double Zdot = 0.0;        // flux formula  -sum u^z mu
};

inline double impulse_p(const ParticleSystem& sys) {
  double s = 0.0;
  for (const auto& p : sys.particles) s -= p.pos.r * p.pos.r * p.weight();
  return s;
}

inline double impulse_z(const ParticleSystem& sys) {
  double s = 0.0;
  for (const auto& p : sys.particles) s -= p.pos.z * p.weight();
  return s;
}

inline double support_radius(const ParticleSystem& sys) {
  double r = 0.0;
  for (const auto& p : sys.particles) r = std::max(r, p.pos.r);
  return r;
}

inline double xi_linf(const ParticleSystem& sys) {
  double m = 0.0;
  for (const auto& p : sys.particles) m = std::max(m, std::abs(p.xi0));
  return m;
}

inline double omega_linf(const ParticleSystem& sys) {
  double m = 0.0;
  for (const auto& p : sys.particles)
    m = std::max(m, p.pos.r * std::abs(p.xi0));
  return m;
}

// (2 pi sum (r |xi0|)^p V)^{1/p} for finite p >= 1; max r |xi0| for p = inf.
inline double omega_norm_lp(const ParticleSystem& sys, double p) {
  if (!(p >= 1.0)) throw std::domain_error("omega_norm_lp: p must be >= 1");
  if (std::isinf(p)) return omega_linf(sys);
  double s = 0.0;
  for (const auto& q : sys.particles)
    s += std::pow(q.pos.r * std::abs(q.xi0), p) * q.volume;
  return std::pow(2.0 * std::numbers::pi * s, 1.0 / p);
}

// E = 1/2 sum_{i,j} (r_i r_j)^{1/2} F(zeta_eps^2) mu_i mu_j over particles
// and images, diagonal included. Together with the self-term in the velocity
// sum this is the Hamiltonian of the regularized dynamics, so its drift
// measures pure time-discretization error.
inline double kinetic_energy(const ParticleSystem& sys) {
  if (!(sys.reg.epsilon > 0.0))
    throw SingularityError("kinetic_energy: requires epsilon > 0");
  const std::size_t n = sys.particles.size();
  if (n == 0) return 0.0;
  const std::size_t m = 2 * n;  // particles then images, canonical order
  std::vector<double> r(m), z(m), mu(m), sq(m);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = sys.particles[i].pos.r;
    z[i] = sys.particles[i].pos.z;
    mu[i] = sys.particles[i].weight();
    r[n + i] = r[i];
    z[n + i] = -z[i];
    mu[n + i] = -mu[i];
  }
  for (std::size_t i = 0; i < m; ++i) sq[i] = std::sqrt(r[i]);
  const double eps2 = sys.reg.epsilon * sys.reg.epsilon;

  std::vector<double> row(m);
  parallel_for_dynamic(static_cast<long>(m), [&](long li) {
    const std::size_t i = static_cast<std::size_t>(li);
    double acc = 0.0;
    // diagonal at half weight, then the strict upper triangle (doubled)
    {
      const double s = eps2 / (r[i] * r[i]);
      acc += 0.5 * sq[i] * sq[i] * f_kernel(s) * mu[i] * mu[i];
    }
    for (std::size_t j = i + 1; j < m; ++j) {
      const double dr = r[i] - r[j];
      const double dz = z[i] - z[j];
      const double s = (dr * dr + dz * dz + eps2) / (r[i] * r[j]);
      acc += sq[i] * sq[j] * f_kernel(s) * mu[i] * mu[j];
    }
    row[i] = acc;
  });
  double e = 0.0;
  for (std::size_t i = 0; i < m; ++i) e += row[i];
  return e;
}

inline double flux_pdot(const ParticleSystem& sys,
                        std::span<const Velocity> u) {
  double s = 0.0;
  for (std::size_t i = 0; i < sys.particles.size(); ++i)
    s -= 2.0 * sys.particles[i].pos.r * u[i].ur * sys.particles[i].weight();
  return s;
}

inline double flux_zdot(const ParticleSystem& sys,
                        std::span<const Velocity> u) {
  double s = 0.0;
  for (std::size_t i = 0; i < sys.particles.size(); ++i)
    s -= u[i].uz * sys.particles[i].weight();
  return s;
}

// Instantaneous d/dt of P by the flux formula; equals the exact derivative
// of the discrete P along the regularized dynamics.
inline double flux_pdot(const ParticleSystem& sys) {
  if (sys.particles.empty()) return 0.0;
  return flux_pdot(sys, velocities_at_particles(sys));
}

inline double flux_zdot(const ParticleSystem& sys) {
  if (sys.particles.empty()) return 0.0;
  return flux_zdot(sys, velocities_at_particles(sys));
}

inline TimeSeriesRecord make_record(const ParticleSystem& sys) {
  TimeSeriesRecord rec;
  rec.t = sys.time;
  rec.P = impulse_p(sys);
  rec.Z = impulse_z(sys);
  rec.Gamma = sys.circulation();
  rec.Rmax = support_radius(sys);
  rec.omega_linf = omega_linf(sys);
  rec.omega_l2 = sys.particles.empty() ? 0.0 : omega_norm_lp(sys, 2.0);
  if (!sys.particles.empty()) {
    rec.E = kinetic_energy(sys);
    const auto u = velocities_at_particles(sys);
    rec.Pdot = flux_pdot(sys, u);
    rec.Zdot = flux_zdot(sys, u);
  }
  return rec;
}

// Monotone envelope sup_{t' <= t} Rmax(t') of a recorded series.
inline std::vector<double> support_radius_envelope(
    std::span<const TimeSeriesRecord> records) {
  std::vector<double> env(records.size());
  double m = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    m = std::max(m, records[i].Rmax);
    env[i] = m;
  }
  return env;
}

struct RunOptions {
  double dt = 0.01;
  double t_max = 1.0;
  long output_every = 1;
};

struct RunResult {
  std::vector<TimeSeriesRecord> records;
  bool aborted = false;
  std::string abort_reason;
  std::size_t abort_particle = 0;
  long advisory_violations = 0;  // steps exceeding the dt <= eps/(2 max|u|) bound
};

// Advances the system with step_rk4, emitting a diagnostics record at t = 0,
// every output_every steps, and at the final step. on_output(index, sys,
// record) runs after each emission (snapshot hook). An integration error
// aborts the run with the records emitted so far.
template <class OutputFn>
inline RunResult run(ParticleSystem& sys, const RunOptions& opt,
                     OutputFn&& on_output) {
  if (!(opt.dt > 0.0)) throw std::domain_error("run: dt must be > 0");
  if (!(opt.t_max >= 0.0)) throw std::domain_error("run: t_max must be >= 0");
  if (opt.output_every < 1)
    throw std::domain_error("run: output_every must be >= 1");

  RunResult result;
  const double t0 = sys.time;
  const long n_steps = std::llround(opt.t_max / opt.dt);
  long out_index = 0;
  auto emit = [&]() {
    result.records.push_back(make_record(sys));
    on_output(out_index++, sys, result.records.back());
  };
  emit();
  for (long step = 1; step <= n_steps; ++step) {
    try {
      const StepInfo info = step_rk4(sys, opt.dt);
      if (opt.dt > advisory_dt_bound(sys.reg.epsilon, info.max_speed))
        ++result.advisory_violations;
    } catch (const IntegrationError& err) {
      result.aborted = true;
      result.abort_reason = err.what();
      result.abort_particle = err.particle_index;
      return result;
    }
    sys.time = t0 + static_cast<double>(step) * opt.dt;
    if (step % opt.output_every == 0 || step == n_steps) emit();
  }
  return result;
}

}  // namespace axiring
