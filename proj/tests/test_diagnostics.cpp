#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "axiring/diagnostics.hpp"
#include "axiring/fitting.hpp"
#include "axiring/particles.hpp"
#include "axiring/rng.hpp"

using namespace axiring;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

ParticleSystem patch_system(double h, double eps) {
  InitialProfile p;
  p.center_r = 1.0;
  p.center_z = 0.5;
  p.radius = 0.25;
  p.amplitude = 1.0;
  return init_from_profile(p, h, Regularization{eps});
}
}  // namespace

TEST_CASE("impulses") {
  ParticleSystem empty;
  CHECK(impulse_p(empty) == 0.0);
  CHECK(impulse_z(empty) == 0.0);

  ParticleSystem one;
  one.particles.push_back({{2.0, 3.0}, -1.0, 0.5});  // mu = -0.5
  CHECK(impulse_p(one) == Approx(2.0));               // -r^2 mu = 4 * 0.5 ... at r=2
  CHECK(impulse_z(one) == Approx(1.5));

  ParticleSystem z3;
  z3.particles.push_back({{1.0, 3.0}, -1.0, 1.0});  // mu = -1
  CHECK(impulse_z(z3) == Approx(3.0));
}

TEST_CASE("patch impulse against the exact disk integral") {
  // integral of lambda r^3 dr dz over the disk = pi (r0^3 rho^2 + 3/4 r0 rho^4)
  const auto sys = patch_system(0.025, 0.05);  // h = rho/10
  const double exact = kPi * (1.0 * 0.25 * 0.25 + 0.75 * std::pow(0.25, 4));
  CHECK(impulse_p(sys) == Approx(exact).epsilon(0.02));
}

TEST_CASE("kinetic energy definitional cases") {
  ParticleSystem empty;
  empty.reg.epsilon = 0.1;
  CHECK(kinetic_energy(empty) == 0.0);

  // two particles: hand-rolled 4x4 extended sum must match exactly
  ParticleSystem sys;
  sys.reg.epsilon = 0.15;
  sys.particles.push_back({{1.0, 0.5}, -1.0, 0.1});
  sys.particles.push_back({{1.4, 0.8}, -0.5, 0.2});
  const double e = kinetic_energy(sys);

  std::vector<double> r, z, mu;
  for (const auto& p : sys.particles) {
    r.push_back(p.pos.r);
    z.push_back(p.pos.z);
    mu.push_back(p.weight());
  }
  for (int i = 0; i < 2; ++i) {
    r.push_back(r[i]);
    z.push_back(-z[i]);
    mu.push_back(-mu[i]);
  }
  double hand = 0.0;
  const double eps2 = 0.15 * 0.15;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double dr = r[i] - r[j], dz = z[i] - z[j];
      const double s = (dr * dr + dz * dz + eps2) / (r[i] * r[j]);
      hand += 0.5 * std::sqrt(r[i] * r[j]) * f_kernel(s) * mu[i] * mu[j];
    }
  CHECK(e == Approx(hand).epsilon(1e-13));
  CHECK(e >= 0.0);

  sys.reg.epsilon = 0.0;
  CHECK_THROWS_AS(kinetic_energy(sys), SingularityError);
}

TEST_CASE("norms") {
  ParticleSystem one;
  one.particles.push_back({{2.0, 0.1}, -1.0, 0.01});
  CHECK(omega_linf(one) == Approx(2.0));
  CHECK(omega_norm_lp(one, std::numeric_limits<double>::infinity()) ==
        Approx(2.0));
  CHECK(omega_norm_lp(one, 1.0) == Approx(2.0 * kPi * 2.0 * 0.01));
  CHECK_THROWS_AS(omega_norm_lp(one, 0.5), std::domain_error);

  // interpolation sanity on a real snapshot: |w|_2^2 <= |w|_inf |w|_1
  const auto sys = patch_system(0.05, 0.1);
  const double l1 = omega_norm_lp(sys, 1.0);
  const double l2 = omega_norm_lp(sys, 2.0);
  CHECK(l2 * l2 <= omega_linf(sys) * l1 * (1.0 + 1e-12));

  // |w|_inf <= Rmax * |xi|_inf
  CHECK(omega_linf(sys) <= support_radius(sys) * xi_linf(sys) * (1 + 1e-12));
}

TEST_CASE("support radius and envelope") {
  ParticleSystem sys;
  sys.particles.push_back({{3.0, 0.2}, -1.0, 0.1});
  CHECK(support_radius(sys) == 3.0);
  CHECK(support_radius(ParticleSystem{}) == 0.0);

  std::vector<TimeSeriesRecord> recs(4);
  recs[0].Rmax = 1.0;
  recs[1].Rmax = 0.9;  // transient dip
  recs[2].Rmax = 1.2;
  recs[3].Rmax = 1.1;
  const auto env = support_radius_envelope(recs);
  CHECK(env == std::vector<double>{1.0, 1.0, 1.2, 1.2});
}

TEST_CASE("fluxes vanish on the empty system") {
  ParticleSystem empty;
  CHECK(flux_pdot(empty) == 0.0);
  CHECK(flux_zdot(empty) == 0.0);
}

TEST_CASE("flux signs are the discrete monotonicity statement") {
  const auto sys = patch_system(0.05, 0.1);
  CHECK(flux_pdot(sys) > 0.0);
  CHECK(flux_zdot(sys) < 0.0);
}

TEST_CASE("fluxes match central differences of P and Z along a run") {
  auto sys = patch_system(0.05, 0.1);
  const RunOptions opt{0.01, 0.3, 5};
  const auto res = run(
      sys, opt, [](long, const ParticleSystem&, const TimeSeriesRecord&) {});
  REQUIRE(res.records.size() >= 5);
  for (std::size_t k = 1; k + 1 < res.records.size(); ++k) {
    const auto& a = res.records[k - 1];
    const auto& b = res.records[k];
    const auto& c = res.records[k + 1];
    const double dp = (c.P - a.P) / (c.t - a.t);
    const double dz = (c.Z - a.Z) / (c.t - a.t);
    CHECK(b.Pdot == Approx(dp).epsilon(0.05));
    CHECK(b.Zdot == Approx(dz).epsilon(0.05));
  }
}

TEST_CASE("energy is conserved along the regularized dynamics") {
  auto sys = patch_system(0.05, 0.1);
  const double e0 = kinetic_energy(sys);
  for (int i = 0; i < 30; ++i) step_rk4(sys, 0.01);
  const double e1 = kinetic_energy(sys);
  CHECK(std::abs(e1 - e0) / e0 < 1e-5);
}

TEST_CASE("fit_power_law") {
  std::vector<std::pair<double, double>> cubic, flat;
  for (int i = 1; i <= 40; ++i) {
    const double t = 0.5 * i;
    cubic.emplace_back(t, 3.0 * t * t);
    flat.emplace_back(t, 2.5);
  }
  const auto f1 = fit_power_law(cubic, 0.4, 21.0);
  CHECK(f1.exponent == Approx(2.0).margin(1e-10));
  CHECK(f1.prefactor == Approx(3.0).epsilon(1e-9));
  CHECK(f1.residual < 1e-10);

  const auto f2 = fit_power_law(flat, 0.4, 21.0);
  CHECK(f2.exponent == Approx(0.0).margin(1e-12));

  CHECK_THROWS_AS(fit_power_law(cubic, 0.4, 2.0), FitError);  // < 8 samples
  std::vector<std::pair<double, double>> bad = cubic;
  bad[5].second = 0.0;
  CHECK_THROWS_AS(fit_power_law(bad, 0.4, 21.0), FitError);
  CHECK_THROWS_AS(fit_power_law(cubic, 5.0, 5.0), FitError);
}

TEST_CASE("records populate every column") {
  auto sys = patch_system(0.06, 0.12);
  const auto rec = make_record(sys);
  CHECK(rec.P > 0.0);
  CHECK(rec.Z > 0.0);
  CHECK(rec.E > 0.0);
  CHECK(rec.Gamma < 0.0);
  CHECK(rec.Rmax > 1.0);
  CHECK(rec.omega_linf > 0.0);
  CHECK(rec.omega_l2 > 0.0);
  CHECK(rec.Pdot > 0.0);
  CHECK(rec.Zdot < 0.0);
}
