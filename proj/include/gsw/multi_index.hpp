#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace gsw {

/// Multi-index in N^n.
struct MultiIndex {
  std::vector<int> c;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> comps) : c(std::move(comps)) {}
  static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(n, 0)); }
  static MultiIndex unit(int n, int i, int q = 1) {
    std::vector<int> v(n, 0);
    v[i] = q;
    return MultiIndex(std::move(v));
  }

  int dim() const { return static_cast<int>(c.size()); }
  int order() const { return std::accumulate(c.begin(), c.end(), 0); }

  MultiIndex operator+(const MultiIndex& o) const {
    assert(dim() == o.dim());
    MultiIndex r = *this;
    for (int i = 0; i < dim(); ++i) r.c[i] += o.c[i];
    return r;
  }
  bool operator==(const MultiIndex& o) const { return c == o.c; }
  bool operator<(const MultiIndex& o) const { return c < o.c; }
  int operator[](int i) const { return c[i]; }

  /// componentwise <=
  bool leq(const MultiIndex& o) const {
    for (int i = 0; i < dim(); ++i)
      if (c[i] > o.c[i]) return false;
    return true;
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < dim(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
  }
};

/// All alpha in N^n with |alpha| = q, lexicographic.
inline void for_each_order(int n, int q, const std::function<void(const MultiIndex&)>& f) {
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int i, int rem) {
    if (i == n - 1) {
      a[i] = rem;
      f(MultiIndex(a));
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      a[i] = v;
      rec(i + 1, rem - v);
    }
  };
  if (n == 0) return;
  rec(0, q);
}

/// All alpha in N^n with |alpha| <= q_max.
inline std::vector<MultiIndex> simplex(int n, int q_max) {
  std::vector<MultiIndex> out;
  for (int q = 0; q <= q_max; ++q)
    for_each_order(n, q, [&](const MultiIndex& a) { out.push_back(a); });
  return out;
}

/// Binomial coefficient for Leibniz sums (orders stay small).
inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double multi_binom(const MultiIndex& a, const MultiIndex& b) {
  double r = 1.0;
  for (int i = 0; i < a.dim(); ++i) r *= binom(a[i], b[i]);
  return r;
}

}  // namespace gsw
