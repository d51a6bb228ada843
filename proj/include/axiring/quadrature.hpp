#pragma once

#include <cmath>
#include <map>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "axiring/errors.hpp"

namespace axiring {

// Configuration for the adaptive panel quadrature: a fixed-order
// Gauss-Legendre rule per panel, panels bisected until the local error
// estimate meets the (width-proportional) share of abs_tolerance.
struct QuadratureSpec {
  int node_count = 15;
  double abs_tolerance = 1e-12;
};

inline void validate(const QuadratureSpec& spec) {
  if (spec.node_count < 8)
    throw std::domain_error("QuadratureSpec: node_count must be >= 8");
  if (!(spec.abs_tolerance > 0.0) || !(spec.abs_tolerance < 1.0))
    throw std::domain_error("QuadratureSpec: abs_tolerance must be in (0, 1)");
}

namespace detail {

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Gauss-Legendre nodes/weights by Newton iteration on P_n.
inline GaussRule make_gauss_rule(int n) {
  GaussRule rule;
  rule.x.assign(n, 0.0);
  rule.w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    rule.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.w[n - 1 - i] = rule.w[i];
  }
  return rule;
}

inline const GaussRule& gauss_rule(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_rule(n)).first;
  return it->second;
}

template <class F>
inline double gauss_panel(const F& f, double a, double b, const GaussRule& r) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i)
    sum += r.w[i] * f(mid + half * r.x[i]);
  return sum * half;
}

}  // namespace detail

// Adaptive bisection with a fixed-order Gauss rule per panel. Throws
// QuadratureError when the depth budget is exhausted before convergence.
template <class F>
inline double integrate_adaptive(const F& f, double a, double b,
                                 const QuadratureSpec& spec = {}) {
  validate(spec);
  const auto& rule = detail::gauss_rule(spec.node_count);
  const double full_width = b - a;
  if (full_width == 0.0) return 0.0;

  struct Segment {
    double a, b, whole;
    int depth;
  };
  constexpr int kMaxDepth = 52;

  std::vector<Segment> stack;
  stack.push_back({a, b, detail::gauss_panel(f, a, b, rule), 0});
  double total = 0.0;
  while (!stack.empty()) {
    Segment seg = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (seg.a + seg.b);
    const double left = detail::gauss_panel(f, seg.a, mid, rule);
    const double right = detail::gauss_panel(f, mid, seg.b, rule);
    const double two = left + right;
    const double local_tol =
        spec.abs_tolerance * std::abs((seg.b - seg.a) / full_width);
    // do not bisect below the roundoff floor of the panel sums
    const double floor =
        32.0 * std::numeric_limits<double>::epsilon() *
        (std::abs(left) + std::abs(right) + std::abs(seg.whole));
    if (std::abs(two - seg.whole) <= std::max(local_tol, floor)) {
      total += two;
      continue;
    }
    if (seg.depth >= kMaxDepth)
      throw QuadratureError(
          "integrate_adaptive: no convergence within the bisection budget");
    stack.push_back({seg.a, mid, left, seg.depth + 1});
    stack.push_back({mid, seg.b, right, seg.depth + 1});
  }
  return total;
}

}  // namespace axiring
