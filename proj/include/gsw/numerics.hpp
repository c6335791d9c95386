#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace gsw {

/// Pairwise (tree) reduction. Used everywhere a sum feeds a norm so that
/// results are reproducible and tile-aligned sums of equal values stay exact.
inline double pairwise_sum(std::span<const double> v) {
  if (v.empty()) return 0.0;
  if (v.size() == 1) return v[0];
  if (v.size() == 2) return v[0] + v[1];
  std::size_t mid = v.size() / 2;
  return pairwise_sum(v.first(mid)) + pairwise_sum(v.subspan(mid));
}

inline std::vector<double> geometric_grid(double lo, double hi, int points_per_decade) {
  assert(lo > 0 && hi > lo);
  std::vector<double> g;
  double step = std::pow(10.0, 1.0 / points_per_decade);
  for (double t = lo; t <= hi * (1.0 + 1e-12); t *= step) g.push_back(t);
  return g;
}

/// {2^k : k_lo <= k <= k_hi}
inline std::vector<double> dyadic_grid(int k_lo, int k_hi) {
  std::vector<double> g;
  for (int k = k_lo; k <= k_hi; ++k) g.push_back(std::ldexp(1.0, k));
  return g;
}

/// Lower convex hull of points with strictly increasing x. Returns indices of
/// hull vertices (Andrew monotone chain, lower part only).
inline std::vector<std::size_t> lower_hull_indices(std::span<const double> x,
                                                   std::span<const double> y) {
  assert(x.size() == y.size());
  std::vector<std::size_t> h;
  for (std::size_t i = 0; i < x.size(); ++i) {
    while (h.size() >= 2) {
      std::size_t a = h[h.size() - 2], b = h[h.size() - 1];
      double cross = (x[b] - x[a]) * (y[i] - y[a]) - (x[i] - x[a]) * (y[b] - y[a]);
      if (cross <= 0.0)
        h.pop_back();
      else
        break;
    }
    h.push_back(i);
  }
  return h;
}

/// Evaluates the piecewise-linear interpolant through hull vertices.
inline double piecewise_linear(std::span<const double> xs, std::span<const double> ys,
                               double x) {
  assert(xs.size() >= 1);
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs.begin());
  double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

/// Maximizes a concave function over the integers [lo, hi] by ternary search.
template <class F>
std::pair<std::int64_t, double> argmax_concave_int(F&& f, std::int64_t lo, std::int64_t hi) {
  while (hi - lo > 2) {
    std::int64_t m1 = lo + (hi - lo) / 3;
    std::int64_t m2 = hi - (hi - lo) / 3;
    if (f(m1) < f(m2))
      lo = m1 + 1;
    else
      hi = m2;
  }
  std::int64_t best = lo;
  double bv = f(lo);
  for (std::int64_t q = lo + 1; q <= hi; ++q) {
    double v = f(q);
    if (v > bv) {
      bv = v;
      best = q;
    }
  }
  return {best, bv};
}

/// Maximizes a concave function of a real variable by ternary search.
template <class F>
std::pair<double, double> argmax_concave(F&& f, double lo, double hi, int iters = 200) {
  for (int i = 0; i < iters; ++i) {
    double m1 = lo + (hi - lo) / 3.0;
    double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) < f(m2))
      lo = m1;
    else
      hi = m2;
  }
  double m = 0.5 * (lo + hi);
  return {m, f(m)};
}

/// Vertex of the parabola through (x0,y0),(x1,y1),(x2,y2); falls back to the
/// middle sample when the points are collinear or curve upward.
inline std::pair<double, double> parabola_peak(double x0, double y0, double x1, double y1,
                                               double x2, double y2) {
  double d01 = (y1 - y0) / (x1 - x0);
  double d12 = (y2 - y1) / (x2 - x1);
  double c2 = (d12 - d01) / (x2 - x0);  // leading coefficient
  if (!(c2 < 0.0)) return {x1, y1};
  double xv = 0.5 * (x0 + x1) - d01 / (2.0 * c2);
  if (xv < x0 || xv > x2) return {x1, y1};
  double yv = y0 + d01 * (xv - x0) + c2 * (xv - x0) * (xv - x1);
  return {xv, yv};
}

inline double sq(double x) { return x * x; }

/// <x> = (1+|x|^2)^{1/2}
inline double bracket(std::span<const double> x) {
  double s = 1.0;
  for (double xi : x) s += xi * xi;
  return std::sqrt(s);
}

inline double bracket1(double x) { return std::sqrt(1.0 + x * x); }

}  // namespace gsw
