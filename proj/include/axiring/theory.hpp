#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "axiring/diagnostics.hpp"
#include "axiring/elliptic.hpp"
#include "axiring/evolution.hpp"
#include "axiring/kernels.hpp"
#include "axiring/particles.hpp"
#include "axiring/quadrature.hpp"
#include "axiring/rng.hpp"

namespace axiring {

// ---------------------------------------------------------------------------
// Growth-exponent formulas.

// beta1(delta) = (2/15 - 2 delta) / (2 - delta), the direct L^p growth rate;
// positive for 0 <= delta < 1/15.
inline double beta1(double delta) {
  if (!(delta >= 0.0) || !(delta < 1.0 / 15.0))
    throw std::domain_error("beta1: delta must be in [0, 1/15)");
  return (2.0 / 15.0 - 2.0 * delta) / (2.0 - delta);
}

// beta0(delta), the limsup-enhanced rate: the positive root of
//   (2 delta + (2 - delta) beta) (10/3 + (15/4) beta) = 1,
// in closed form. Strictly positive on [0, 3/20).
inline double beta0(double delta) {
  if (!(delta >= 0.0) || !(delta < 3.0 / 20.0))
    throw std::domain_error("beta0: delta must be in [0, 3/20)");
  const double disc = 536.0 - 1148.0 * delta + 845.0 * delta * delta;
  return (8.0 + 5.0 * delta) / (9.0 * (delta - 2.0)) +
         std::sqrt(disc) / (9.0 * (2.0 - delta) * std::sqrt(5.0));
}

// Residual of the defining quadratic at beta = beta0(delta).
inline double beta0_root_residual(double delta) {
  const double b = beta0(delta);
  return std::abs((2.0 * delta + (2.0 - delta) * b) *
                      (10.0 / 3.0 + (15.0 / 4.0) * b) -
                  1.0);
}

// X0 = ( |xi|_1^{4-10q/3} |xi|_inf^{q/3} Z0^{4(q-1)} P0^{1-q}
//      + |xi|_1^{3-7q/3}  |xi|_inf^{q/3} Z0^{2(q-1)} )^{1/q},  1 < q < 15/13.
inline double x0_constant(double norm_xi_l1, double norm_xi_linf, double z0,
                          double p0, double q) {
  if (!(q > 1.0) || !(q < 15.0 / 13.0))
    throw std::domain_error("x0_constant: q must be in (1, 15/13)");
  if (!(norm_xi_l1 > 0.0) || !(norm_xi_linf > 0.0) || !(z0 > 0.0) ||
      !(p0 > 0.0))
    throw std::domain_error("x0_constant: all inputs must be > 0");
  const double first = std::pow(norm_xi_l1, 4.0 - 10.0 * q / 3.0) *
                       std::pow(norm_xi_linf, q / 3.0) *
                       std::pow(z0, 4.0 * (q - 1.0)) * std::pow(p0, 1.0 - q);
  const double second = std::pow(norm_xi_l1, 3.0 - 7.0 * q / 3.0) *
                        std::pow(norm_xi_linf, q / 3.0) *
                        std::pow(z0, 2.0 * (q - 1.0));
  return std::pow(first + second, 1.0 / q);
}

// P(t) >= ( C_q (E0/X0)^{q/(q-1)} t + P0^{q/(q-1)} )^{(q-1)/q}.
inline double p_lower_bound_curve(double t, double q, double c_q, double e0,
                                  double x0, double p0) {
  if (!(q > 1.0) || !(q < 15.0 / 13.0))
    throw std::domain_error("p_lower_bound_curve: q must be in (1, 15/13)");
  if (!(c_q > 0.0))
    throw std::domain_error("p_lower_bound_curve: C_q must be > 0");
  const double g = (q - 1.0) / q;
  return std::pow(c_q * std::pow(e0 / x0, 1.0 / g) * t + std::pow(p0, 1.0 / g),
                  g);
}

// Largest C_q that keeps the curve below every (t, P) sample with t > 0 in
// the calibration window (the curve equals P0 at t = 0 by construction).
inline double calibrate_cq(std::span<const std::pair<double, double>> series,
                           double t_hi, double q, double e0, double x0,
                           double p0) {
  const double g = (q - 1.0) / q;
  const double scale = std::pow(e0 / x0, 1.0 / g);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [t, p] : series) {
    if (!(t > 0.0) || t > t_hi) continue;
    const double c =
        (std::pow(p, 1.0 / g) - std::pow(p0, 1.0 / g)) / (scale * t);
    best = std::min(best, c);
  }
  if (!std::isfinite(best) || !(best > 0.0))
    throw std::domain_error("calibrate_cq: no usable calibration samples");
  return best;
}

// ---------------------------------------------------------------------------
// Inequality audits. Absolute constants the analysis leaves unquantified are
// measured as empirical ratio suprema; pass bands are wide sanity bands. The
// only hard (constant-1) check is audit_p_linfty.

struct AuditReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool pass = false;
  bool hard = false;  // participates in the audit exit gate
  std::vector<std::pair<std::string, double>> metadata;
};

// Seeded sample points covering the particle support and a margin.
inline std::vector<HalfPlanePoint> sample_points_around(
    const ParticleSystem& sys, int count, double margin_frac,
    std::uint64_t seed) {
  double r_lo = std::numeric_limits<double>::infinity(), r_hi = 0.0;
  double z_lo = std::numeric_limits<double>::infinity(),
         z_hi = -std::numeric_limits<double>::infinity();
  for (const auto& p : sys.particles) {
    r_lo = std::min(r_lo, p.pos.r);
    r_hi = std::max(r_hi, p.pos.r);
    z_lo = std::min(z_lo, p.pos.z);
    z_hi = std::max(z_hi, p.pos.z);
  }
  if (sys.particles.empty()) {
    r_lo = z_lo = 0.0;
    r_hi = z_hi = 1.0;
  }
  const double mr = margin_frac * std::max(r_hi - r_lo, 1e-3);
  const double mz = margin_frac * std::max(z_hi - z_lo, 1e-3);
  SplitMix64 rng(seed);
  std::vector<HalfPlanePoint> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i)
    pts.push_back({std::max(0.0, rng.uniform(r_lo - mr, r_hi + mr)),
                   std::max(0.0, rng.uniform(z_lo - mz, z_hi + mz))});
  return pts;
}

namespace detail {

// 2 int_0^pi X^{-q/2} dth  (= int_0^{2pi}, X is even about th = pi).
inline double theta_integral_xq(HalfPlanePoint sample, HalfPlanePoint src,
                                double q) {
  const double d2 = meridional_distance_sq(sample, src);
  const double scale = (q == 0.0) ? 1.0 : std::pow(d2, -0.5 * q);
  QuadratureSpec spec{15, std::max(1e-280, 1e-10 * scale)};
  return 2.0 * integrate_adaptive(
                   [&](double th) {
                     const auto k = kernel_xy(sample, src, th);
                     return std::pow(k.x, -0.5 * q);
                   },
                   0.0, std::numbers::pi, spec);
}

struct ExtendedSources {
  std::vector<double> r, z, mu;  // particles then images
  std::size_t n = 0;             // upper-half count
  void load(const ParticleSystem& sys) {
    n = sys.particles.size();
    r.resize(2 * n);
    z.resize(2 * n);
    mu.resize(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = sys.particles[i].pos.r;
      z[i] = sys.particles[i].pos.z;
      mu[i] = sys.particles[i].weight();
      r[n + i] = r[i];
      z[n + i] = -z[i];
      mu[n + i] = -mu[i];
    }
  }
};

}  // namespace detail

// Kernel moment bound: sup over samples of
//   sum_j [ int_0^{2pi} X^{-q/2} dth ] |mu_j|   (particles and images)
// against |xi|_1^{1-q/3} |xi|_inf^{q/3}, with the planar convention
// |xi|_1 = sum |mu| over the full half-plane (ratio = 2 pi exactly at q = 0).
inline AuditReport audit_lemma_xq(const ParticleSystem& sys, double q,
                                  std::span<const HalfPlanePoint> samples) {
  if (!(q >= 0.0) || !(q < 3.0))
    throw std::domain_error("audit_lemma_xq: q must be in [0, 3)");
  if (samples.empty())
    throw std::domain_error("audit_lemma_xq: needs sample points");
  detail::ExtendedSources ext;
  ext.load(sys);
  double lhs = 0.0;
  std::vector<double> per_sample(samples.size());
  parallel_for_dynamic(static_cast<long>(samples.size()), [&](long k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < ext.r.size(); ++j)
      acc += detail::theta_integral_xq(samples[k], {ext.r[j], ext.z[j]}, q) *
             std::abs(ext.mu[j]);
    per_sample[k] = acc;
  });
  for (double v : per_sample) lhs = std::max(lhs, v);
  double l1 = 0.0;
  for (double m : ext.mu) l1 += std::abs(m);
  const double rhs = std::pow(l1, 1.0 - q / 3.0) * std::pow(xi_linf(sys), q / 3.0);
  AuditReport rep;
  rep.name = "lemma_xq";
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.ratio = rhs > 0.0 ? lhs / rhs : 0.0;
  rep.pass = std::isfinite(rep.ratio) && rep.ratio < 1e3;
  rep.metadata = {{"q", q}, {"samples", double(samples.size())}};
  return rep;
}

// Planar bound: sup over particle positions of sum |mu_i| / d^alpha against
// |omega|_{L1(Pi+)}^{1-a/2} |omega|_{Linf(Pi+)}^{a/2} (no images; planar
// norms). The i = sample term enters only at alpha = 0, where d^0 = 1.
inline AuditReport audit_lemma_2d(const ParticleSystem& sys, double alpha) {
  if (!(alpha >= 0.0) || !(alpha < 2.0))
    throw std::domain_error("audit_lemma_2d: alpha must be in [0, 2)");
  const auto& ps = sys.particles;
  double lhs = 0.0;
  std::vector<double> per(ps.size(), 0.0);
  parallel_for_dynamic(static_cast<long>(ps.size()), [&](long k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const double d2 = meridional_distance_sq(ps[i].pos, ps[k].pos);
      if (d2 == 0.0) {
        if (alpha == 0.0) acc += std::abs(ps[i].weight());
        continue;
      }
      acc += std::abs(ps[i].weight()) * std::pow(d2, -0.5 * alpha);
    }
    per[k] = acc;
  });
  for (double v : per) lhs = std::max(lhs, v);
  double l1 = 0.0;
  for (const auto& p : ps) l1 += std::abs(p.weight());
  const double rhs =
      std::pow(l1, 1.0 - 0.5 * alpha) * std::pow(omega_linf(sys), 0.5 * alpha);
  AuditReport rep;
  rep.name = "lemma_2d";
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.ratio = rhs > 0.0 ? lhs / rhs : 0.0;
  rep.pass = std::isfinite(rep.ratio) && rep.ratio < 1e3;
  rep.metadata = {{"alpha", alpha}};
  return rep;
}

// Velocity maximum against the product of conserved norms,
//   |u|_inf <= C |r w|_1^{1/4} |w/r|_1^{1/4} |w/r|_inf^{1/2}  (R^3 norms).
inline AuditReport audit_fs_bound(const ParticleSystem& sys,
                                  std::span<const HalfPlanePoint> samples) {
  AuditReport rep;
  rep.name = "fs_bound";
  if (sys.particles.empty()) {
    rep.pass = true;  // vacuous
    rep.metadata = {{"samples", double(samples.size())}};
    return rep;
  }
  std::vector<double> per(samples.size(), 0.0);
  parallel_for_dynamic(static_cast<long>(samples.size()), [&](long k) {
    const Velocity u = velocity_at(sys, samples[k]);
    per[k] = std::hypot(u.ur, u.uz);
  });
  double lhs = 0.0;
  for (double v : per) lhs = std::max(lhs, v);
  double abs_gamma = 0.0;
  for (const auto& p : sys.particles) abs_gamma += std::abs(p.weight());
  const double four_pi = 4.0 * std::numbers::pi;
  const double r_omega_l1 = four_pi * impulse_p(sys);  // both halves
  const double xi_l1 = four_pi * abs_gamma;
  const double rhs = std::pow(r_omega_l1, 0.25) * std::pow(xi_l1, 0.25) *
                     std::sqrt(xi_linf(sys));
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.ratio = rhs > 0.0 ? lhs / rhs : 0.0;
  rep.pass = std::isfinite(rep.ratio) && rep.ratio < 1e2;
  rep.metadata = {{"samples", double(samples.size())}};
  return rep;
}

// Hard constant-1 inequality (half-space quantities):
//   iiint -r^2 xi dx <= R(t)^delta |w|_{L^p}^{2-delta} |xi0^{-1}|_{L^beta}^{1-delta},
// beta = (1-delta)/(1-(2-delta)/p). The reciprocal norm uses the frozen
// particle data (xi0, V), which realizes the invariance of the distribution
// function of xi.
inline AuditReport audit_p_linfty(const ParticleSystem& sys, double p,
                                  double delta) {
  if (!(delta >= 0.0) || !(delta < 1.0))
    throw std::domain_error("audit_p_linfty: delta must be in [0, 1)");
  if (!(p >= 2.0 - delta))
    throw std::domain_error("audit_p_linfty: requires p >= 2 - delta");
  AuditReport rep;
  rep.name = "p_linfty";
  rep.hard = true;
  rep.metadata = {{"p", p}, {"delta", delta}};
  if (sys.particles.empty()) {
    rep.pass = true;
    return rep;
  }

  const double two_pi = 2.0 * std::numbers::pi;
  const double lhs = two_pi * impulse_p(sys);

  double beta;
  if (std::isinf(p)) {
    beta = 1.0 - delta;
  } else {
    const double denom = 1.0 - (2.0 - delta) / p;
    beta = denom > 0.0 ? (1.0 - delta) / denom
                       : std::numeric_limits<double>::infinity();
  }
  double recip;
  if (std::isinf(beta)) {
    double m = 0.0;
    for (const auto& q : sys.particles)
      m = std::max(m, 1.0 / std::abs(q.xi0));
    recip = m;
  } else {
    double s = 0.0;
    for (const auto& q : sys.particles)
      s += std::pow(std::abs(q.xi0), -beta) * q.volume;
    recip = std::pow(two_pi * s, 1.0 / beta);
  }
  if (!std::isfinite(recip)) {  // data violating the reciprocal assumption
    rep.pass = true;
    rep.metadata.emplace_back("not_applicable", 1.0);
    return rep;
  }
  const double rhs = std::pow(support_radius(sys), delta) *
                     std::pow(omega_norm_lp(sys, p), 2.0 - delta) *
                     std::pow(recip, 1.0 - delta);
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.ratio = rhs > 0.0 ? lhs / rhs : 0.0;
  rep.pass = lhs <= rhs * (1.0 + 1e-9);
  return rep;
}

namespace detail {

// Middle kernels of the energy / Pdot comparability estimates.
inline double energy_middle_pair(HalfPlanePoint a, HalfPlanePoint b) {
  const double scale = std::pow(meridional_distance_sq(a, b), -1.5);
  QuadratureSpec spec{15, std::max(1e-280, 1e-10 * scale)};
  const double integral = integrate_adaptive(
      [&](double th) {
        const auto k = kernel_xy(a, b, th);
        const double c = std::cos(th);
        return c * c / (std::sqrt(k.x) * k.xbar * k.y);
      },
      0.0, 0.5 * std::numbers::pi, spec);
  const double rr = a.r * b.r;
  return rr * rr * (a.z * b.z) * integral;
}

inline double pdot_middle_pair(HalfPlanePoint a, HalfPlanePoint b) {
  QuadratureSpec spec{15, 1e-12};
  const double integral = integrate_adaptive(
      [&](double th) {
        const auto k = kernel_xy(a, b, th);
        const double c = std::cos(th);
        return c * c / (k.y * std::sqrt(k.y) * k.ybar);
      },
      0.0, 0.5 * std::numbers::pi, spec);
  const double rr = a.r * b.r;
  return rr * rr * (a.z + b.z) * integral;
}

}  // namespace detail

// Random few-particle configurations: the interaction energy and the Pdot
// flux, each against its theta-quadrature middle kernel. Point evaluation
// (epsilon = 0), so the kernel diagonal is excluded wherever it is singular:
// both sides of the energy pair drop i = j and the self-image, while the
// Pdot pair keeps the (finite) diagonal that the flux double sum contains.
inline AuditReport audit_energy_kernel_bounds(int config_count,
                                              std::uint64_t seed) {
  if (config_count < 10)
    throw std::domain_error("audit_energy_kernel_bounds: count must be >= 10");
  SplitMix64 rng(seed);
  double re_min = std::numeric_limits<double>::infinity(), re_max = 0.0;
  double rp_min = std::numeric_limits<double>::infinity(), rp_max = 0.0;
  bool all_positive = true;
  for (int c = 0; c < config_count; ++c) {
    const std::size_t np = 2 + rng.next() % 4;
    std::vector<HalfPlanePoint> pos(np);
    std::vector<double> mu(np);
    for (std::size_t i = 0; i < np; ++i) {
      pos[i] = {rng.uniform(0.5, 2.0), rng.uniform(0.2, 1.5)};
      mu[i] = -rng.uniform(0.1, 1.0);
    }
    // interaction energy over particles + images, self and own-image excluded
    double e_int = 0.0;
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t j = 0; j < np; ++j) {
        if (j != i)
          e_int += 0.5 * std::sqrt(pos[i].r * pos[j].r) *
                   f_kernel(zeta_sq(pos[i], pos[j])) * mu[i] * mu[j];
        const HalfPlanePoint img = mirror(pos[j]);
        if (!(j == i))  // (i, own image) excluded to match the middle sum
          e_int += 0.5 * std::sqrt(pos[i].r * img.r) *
                   f_kernel(zeta_sq(pos[i], img)) * mu[i] * (-mu[j]);
      }
    e_int *= 2.0;  // image rows duplicate particle rows pairwise

    // Pdot via the flux formula with point kernels
    double pdot = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
      double ur = 0.0;
      for (std::size_t j = 0; j < np; ++j) {
        if (j != i) ur += velocity_kernel(pos[i], pos[j]).kr * mu[j];
        ur += velocity_kernel(pos[i], mirror(pos[j])).kr * (-mu[j]);
      }
      pdot -= 2.0 * pos[i].r * ur * mu[i];
    }

    double m_e = 0.0, m_p = 0.0;
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t j = 0; j < np; ++j) {
        if (j != i) m_e += detail::energy_middle_pair(pos[i], pos[j]) * mu[i] * mu[j];
        m_p += detail::pdot_middle_pair(pos[i], pos[j]) * mu[i] * mu[j];
      }

    if (!(e_int > 0.0) || !(pdot > 0.0) || !(m_e > 0.0) || !(m_p > 0.0))
      all_positive = false;
    else {
      re_min = std::min(re_min, m_e / e_int);
      re_max = std::max(re_max, m_e / e_int);
      rp_min = std::min(rp_min, m_p / pdot);
      rp_max = std::max(rp_max, m_p / pdot);
    }
  }
  AuditReport rep;
  rep.name = "energy_kernel_bounds";
  rep.lhs = std::max(re_max, rp_max);
  rep.rhs = std::min(re_min, rp_min);
  rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
  rep.pass = all_positive && rep.rhs > 1e-3 && rep.lhs < 1e3;
  rep.metadata = {{"configs", double(config_count)},
                  {"e_ratio_min", re_min},
                  {"e_ratio_max", re_max},
                  {"pdot_ratio_min", rp_min},
                  {"pdot_ratio_max", rp_max}};
  return rep;
}

// Sign suite for the monotonicity machinery: F' < 0, F'' > 0 and
// F' + 2sF'' > 0 on a log grid.
inline AuditReport audit_f_signs(int grid_points = 200, double s_lo = 1e-6,
                                 double s_hi = 1e6) {
  double max_d1 = -std::numeric_limits<double>::infinity();
  double min_d2 = std::numeric_limits<double>::infinity();
  double min_comb = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_points; ++i) {
    const double s =
        s_lo * std::pow(s_hi / s_lo, double(i) / double(grid_points - 1));
    const double d1 = f_kernel_d1(s);
    const double d2 = f_kernel_d2(s);
    max_d1 = std::max(max_d1, d1);
    min_d2 = std::min(min_d2, d2);
    min_comb = std::min(min_comb, d1 + 2.0 * s * d2);
  }
  AuditReport rep;
  rep.name = "f_signs";
  rep.hard = true;
  rep.pass = max_d1 < 0.0 && min_d2 > 0.0 && min_comb > 0.0;
  rep.metadata = {{"grid", double(grid_points)},
                  {"max_d1", max_d1},
                  {"min_d2", min_d2},
                  {"min_d1_plus_2s_d2", min_comb}};
  return rep;
}

// H(z, zbar) - H(z, -zbar) > 0 on seeded random tuples with z, zbar > 0; the
// mechanistic witness of the Z-monotonicity.
inline AuditReport audit_h_gap(int tuples, std::uint64_t seed) {
  SplitMix64 rng(seed);
  long violations = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < tuples; ++i) {
    const double r = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    const double rb = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    const double z = std::exp(rng.uniform(std::log(0.05), std::log(10.0)));
    const double zb = std::exp(rng.uniform(std::log(0.05), std::log(10.0)));
    const double gap = h_kernel(r, rb, z, zb) - h_kernel(r, rb, z, -zb);
    min_gap = std::min(min_gap, gap);
    if (!(gap > 0.0)) ++violations;
  }
  AuditReport rep;
  rep.name = "h_gap";
  rep.hard = true;
  rep.lhs = min_gap;
  rep.pass = violations == 0;
  rep.metadata = {{"tuples", double(tuples)},
                  {"violations", double(violations)},
                  {"min_gap", min_gap}};
  return rep;
}

// E_E'(a) = (E_E - E_K)/(2a) and E_K'(a) = (E_E - (1-a)E_K)/(2a(1-a)) against
// central differences on [0.01, 0.99].
inline AuditReport audit_derivative_identities(int grid_points = 99) {
  const double h = 1e-6;
  double worst = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double a = 0.01 + (0.99 - 0.01) * double(i) / double(grid_points - 1);
    const double k = elliptic_k(a);
    const double e = elliptic_e(a);
    const double de_num = (elliptic_e(a + h) - elliptic_e(a - h)) / (2.0 * h);
    const double dk_num = (elliptic_k(a + h) - elliptic_k(a - h)) / (2.0 * h);
    const double de = (e - k) / (2.0 * a);
    const double dk = (e - (1.0 - a) * k) / (2.0 * a * (1.0 - a));
    worst = std::max(worst, std::abs(de_num - de) / std::abs(de));
    worst = std::max(worst, std::abs(dk_num - dk) / std::abs(dk));
  }
  AuditReport rep;
  rep.name = "elliptic_derivative_identities";
  rep.hard = true;
  rep.lhs = worst;
  rep.rhs = 1e-6;
  rep.ratio = worst / 1e-6;
  rep.pass = worst <= 1e-6;
  rep.metadata = {{"grid", double(grid_points)}, {"max_rel_err", worst}};
  return rep;
}

// Ratio suprema of the F-est kernel comparability over random point pairs.
inline AuditReport audit_f_est(int pairs, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const double taus[3] = {0.5, 1.0, 1.5};
  double max_ratio[3] = {0.0, 0.0, 0.0};
  for (int i = 0; i < pairs; ++i) {
    const HalfPlanePoint p{rng.uniform(0.3, 3.0), rng.uniform(0.1, 3.0)};
    const HalfPlanePoint q{rng.uniform(0.3, 3.0), rng.uniform(0.1, 3.0)};
    if (meridional_distance_sq(p, q) < 1e-8) continue;
    for (int t = 0; t < 3; ++t) {
      const auto sides = f_est_quadrature(p, q, taus[t]);
      max_ratio[t] = std::max(max_ratio[t], sides.lhs / sides.rhs);
    }
  }
  AuditReport rep;
  rep.name = "f_est";
  rep.lhs = std::max({max_ratio[0], max_ratio[1], max_ratio[2]});
  rep.pass = std::isfinite(rep.lhs);
  rep.metadata = {{"pairs", double(pairs)},
                  {"max_ratio_tau_0.5", max_ratio[0]},
                  {"max_ratio_tau_1.0", max_ratio[1]},
                  {"max_ratio_tau_1.5", max_ratio[2]}};
  return rep;
}

}  // namespace axiring
