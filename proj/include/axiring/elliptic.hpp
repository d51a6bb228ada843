#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "axiring/quadrature.hpp"

namespace axiring {

// Complete elliptic integrals in the parameter convention
//
//   E_K(a) = int_0^1 (1-t^2)^{-1/2} (1-a t^2)^{-1/2} dt,
//   E_E(a) = int_0^1 (1-t^2)^{-1/2} (1-a t^2)^{+1/2} dt,
//
// i.e. the argument multiplies t^2 directly (a parameter, not a squared
// modulus), together with the kernel family
//
//   F(s)  = int_0^pi cos(th) (2(1-cos th) + s)^{-1/2} dth
//         = (4+s)^{-1/2} [ (2+s) E_K(a) - (4+s) E_E(a) ],    a = 4/(4+s),
//
// and its first two s-derivatives in closed form.
//
// Everything is evaluated through one arithmetic-geometric mean pass:
// with c_0^2 = a, c_{n+1} = c_n^2 / (4 a_{n+1}),
//
//   E_K = pi / (2 agm),     E_E = E_K (1 - sum_{n>=0} 2^{n-1} c_n^2),
//
// and writing S1 = sum_{n>=1} 2^{n-1} c_n^2 the closed forms rearrange to
//
//   F(s)          = (4+s)^{1/2} E_K S1,
//   F'(s)         = E_K ((2+s) S1 - a) / (2 s (4+s)^{1/2}),
//   F''(s)        = E_K ((32+16s)/(4+s) - (16+4s+s^2) S1) / (4 s^2 (4+s)^{3/2}),
//   F(s)-2sF'(s)  = E_K (2 S1 + a) / (4+s)^{1/2}.
//
// These are subtraction-free in the regimes where the textbook forms cancel
// (s -> 0 and s -> infinity), which keeps the far-field and near-diagonal
// kernel evaluations at full double precision.

namespace detail {

struct AgmKS {
  double k;   // E_K(alpha)
  double s1;  // sum_{n>=1} 2^{n-1} c_n^2
};

// alpha and b0sq = 1 - alpha are passed separately so call sites that know
// both exactly (alpha = 4/(4+s), b0sq = s/(4+s)) avoid the 1-alpha rounding.
inline AgmKS agm_k_s1(double alpha, double b0sq) {
  const double b0 = std::sqrt(b0sq);
  double c = alpha / (2.0 * (1.0 + b0));  // c_1, rationalized
  // (a, b) start at (a_1, b_1) so that c_{n+1} = c_n^2 / (4 a_{n+1}) lines up
  double a = 0.5 * (1.0 + b0);
  double b = std::sqrt(b0);
  double s1 = 0.0;
  double pw = 1.0;  // 2^{n-1} for n = 1
  for (int it = 0; it < 64; ++it) {
    s1 += pw * c * c;
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = c * c / (4.0 * an);
    a = an;
    b = bn;
    pw *= 2.0;
    if (c == 0.0 || pw * c * c <= 1e-18 * s1) break;
  }
  return {std::numbers::pi / (a + b), s1};
}

}  // namespace detail

// E_K(alpha) for alpha in [0, 1); relative error ~1e-15.
inline double elliptic_k(double alpha) {
  if (!(alpha >= 0.0) || !(alpha < 1.0))
    throw std::domain_error("elliptic_k: alpha must be in [0, 1)");
  return detail::agm_k_s1(alpha, 1.0 - alpha).k;
}

// E_E(alpha) for alpha in [0, 1].
inline double elliptic_e(double alpha) {
  if (!(alpha >= 0.0) || !(alpha <= 1.0))
    throw std::domain_error("elliptic_e: alpha must be in [0, 1]");
  if (alpha == 1.0) return 1.0;
  const auto ks = detail::agm_k_s1(alpha, 1.0 - alpha);
  return ks.k * (1.0 - (0.5 * alpha + ks.s1));
}

struct FFamily {
  double f;     // F(s)
  double d1;    // F'(s)
  double comb;  // F(s) - 2 s F'(s)
};

// One AGM pass for the three kernel quantities the Biot-Savart law needs.
inline FFamily f_family(double s) {
  if (!(s > 0.0)) throw std::domain_error("f_family: s must be > 0");
  const double q = 4.0 + s;
  const double alpha = 4.0 / q;
  const auto ks = detail::agm_k_s1(alpha, s / q);
  const double rq = std::sqrt(q);
  FFamily out;
  out.f = rq * ks.k * ks.s1;
  out.d1 = ks.k * ((2.0 + s) * ks.s1 - alpha) / (2.0 * s * rq);
  out.comb = ks.k * (2.0 * ks.s1 + alpha) / rq;
  return out;
}

inline double f_kernel(double s) {
  if (!(s > 0.0)) throw std::domain_error("f_kernel: s must be > 0");
  return f_family(s).f;
}

inline double f_kernel_d1(double s) {
  if (!(s > 0.0)) throw std::domain_error("f_kernel_d1: s must be > 0");
  return f_family(s).d1;
}

inline double f_kernel_d2(double s) {
  if (!(s > 0.0)) throw std::domain_error("f_kernel_d2: s must be > 0");
  const double q = 4.0 + s;
  const auto ks = detail::agm_k_s1(4.0 / q, s / q);
  const double bracket = (32.0 + 16.0 * s) / q - (16.0 + s * q) * ks.s1;
  return ks.k * bracket / (4.0 * s * s * q * std::sqrt(q));
}

// F(s) - 2 s F'(s); strictly decreasing in s.
inline double f_combination(double s) {
  if (!(s > 0.0)) throw std::domain_error("f_combination: s must be > 0");
  return f_family(s).comb;
}

// ---------------------------------------------------------------------------
// Quadrature oracles. These deliberately avoid the AGM path so that the
// closed forms above can be audited against an independent evaluation.

// E_K via the regularizing substitution t = sin(phi) of the defining
// integral; 1 - alpha sin^2 phi is evaluated as (1-alpha) + alpha cos^2 phi,
// which keeps the integrand at full precision near the alpha -> 1 peak.
inline double oracle_elliptic_k(double alpha,
                                const QuadratureSpec& spec = {15, 1e-13}) {
  if (!(alpha >= 0.0) || !(alpha < 1.0))
    throw std::domain_error("oracle_elliptic_k: alpha must be in [0, 1)");
  const double b0sq = 1.0 - alpha;
  return integrate_adaptive(
      [alpha, b0sq](double phi) {
        const double cs = std::cos(phi);
        return 1.0 / std::sqrt(b0sq + alpha * cs * cs);
      },
      0.0, 0.5 * std::numbers::pi, spec);
}

inline double oracle_elliptic_e(double alpha,
                                const QuadratureSpec& spec = {15, 1e-13}) {
  if (!(alpha >= 0.0) || !(alpha <= 1.0))
    throw std::domain_error("oracle_elliptic_e: alpha must be in [0, 1]");
  const double b0sq = 1.0 - alpha;
  return integrate_adaptive(
      [alpha, b0sq](double phi) {
        const double cs = std::cos(phi);
        return std::sqrt(b0sq + alpha * cs * cs);
      },
      0.0, 0.5 * std::numbers::pi, spec);
}

// int_0^pi cos(th) (2(1-cos th)+s)^{-power} dth for power in {1/2, 3/2, 5/2}.
// Shared oracle for the F family: F = I_{1/2}, F' = -I_{3/2}/2, F'' = 3 I_{5/2}/4.
inline double oracle_theta_quadrature(double s, double power,
                                      const QuadratureSpec& spec) {
  validate(spec);
  if (!(s > 0.0)) throw std::domain_error("oracle_theta_quadrature: s must be > 0");
  if (power != 0.5 && power != 1.5 && power != 2.5)
    throw std::domain_error(
        "oracle_theta_quadrature: power must be 1/2, 3/2 or 5/2");
  auto integrand = [s, power](double th) {
    // 2(1 - cos th) written as 4 sin^2(th/2); no cancellation for small th
    const double sn = std::sin(0.5 * th);
    const double base = 4.0 * sn * sn + s;
    const double root = std::sqrt(base);
    double denom = root;                       // power 1/2
    if (power == 1.5) denom = base * root;     // power 3/2
    if (power == 2.5) denom = base * base * root;
    return std::cos(th) / denom;
  };
  return integrate_adaptive(integrand, 0.0, std::numbers::pi, spec);
}

}  // namespace axiring
