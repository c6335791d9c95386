#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <variant>
#include <vector>

#include "multi_index.hpp"
#include "numerics.hpp"

namespace gsw {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

namespace detail {

/// I_q = int_0^1 xi^q e^{-i z xi} d xi for q = 0..q_max, real z. Series for
/// small |z|; otherwise upward recursion while q <= |z| (stable there) and
/// self-correcting downward recursion from a buffered seed for q > |z|.
inline std::vector<cplx> unit_interval_moments(double z, int q_max) {
  std::vector<cplx> I(std::size_t(q_max) + 1);
  double az = std::abs(z);
  cplx iz(0.0, z);
  cplx ez = std::exp(-iz);  // e^{-iz}
  if (az <= 8.0) {
    for (int q = 0; q <= q_max; ++q) {
      cplx term(1.0, 0.0);  // (-iz)^m / m!
      cplx sum = term / double(q + 1);
      for (int m = 1; m < 80; ++m) {
        term *= -iz / double(m);
        cplx add = term / double(q + m + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
      }
      I[std::size_t(q)] = sum;
    }
    return I;
  }
  int q_up = std::min<int>(q_max, int(az));
  I[0] = (cplx(1.0, 0.0) - ez) / iz;
  for (int q = 1; q <= q_up; ++q)
    I[std::size_t(q)] = (double(q) * I[std::size_t(q - 1)] - ez) / iz;
  if (q_up < q_max) {
    int qs = q_max + 30;
    cplx cur = ez / double(qs + 1);  // asymptotic seed; error contracts downward
    for (int q = qs; q > q_up; --q) {
      cplx prev = (iz * cur + ez) / double(q);
      if (q - 1 <= q_max && q - 1 > q_up) I[std::size_t(q - 1)] = prev;
      cur = prev;
    }
  }
  return I;
}

}  // namespace detail

/// Piecewise polynomial on consecutive intervals [x_i, x_{i+1}), zero outside
/// [x_0, x_K]. Coefficients are stored in the local basis (x - x_i)^k, which
/// differentiation preserves.
struct PiecewisePoly {
  std::vector<double> breaks;               // strictly increasing, size K+1
  std::vector<std::vector<double>> coef;    // size K, local coefficients

  bool empty() const { return breaks.size() < 2; }

  // half-open pieces: eval(breaks.back()) is 0, matching lattice-exact cells
  double eval(double x) const {
    if (empty() || x < breaks.front() || x >= breaks.back()) return 0.0;
    std::size_t i = piece_index(x);
    double t = x - breaks[i];
    double v = 0.0;
    for (std::size_t k = coef[i].size(); k-- > 0;) v = v * t + coef[i][k];
    return v;
  }

  std::size_t piece_index(double x) const {
    auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
    std::size_t i = std::size_t(it - breaks.begin());
    if (i == 0) return 0;
    if (i >= breaks.size()) return breaks.size() - 2;
    return i - 1;
  }

  PiecewisePoly derivative() const {
    PiecewisePoly d;
    d.breaks = breaks;
    d.coef.reserve(coef.size());
    for (const auto& c : coef) {
      std::vector<double> dc;
      for (std::size_t k = 1; k < c.size(); ++k) dc.push_back(double(k) * c[k]);
      if (dc.empty()) dc.push_back(0.0);
      d.coef.push_back(std::move(dc));
    }
    return d;
  }
};

/// Product of two piecewise polynomials on the union of their breakpoints.
inline PiecewisePoly multiply(const PiecewisePoly& a, const PiecewisePoly& b) {
  PiecewisePoly r;
  if (a.empty() || b.empty()) return r;
  double lo = std::max(a.breaks.front(), b.breaks.front());
  double hi = std::min(a.breaks.back(), b.breaks.back());
  if (lo >= hi) return r;
  std::vector<double> bk;
  for (double x : a.breaks)
    if (x >= lo - 1e-15 && x <= hi + 1e-15) bk.push_back(x);
  for (double x : b.breaks)
    if (x >= lo - 1e-15 && x <= hi + 1e-15) bk.push_back(x);
  std::sort(bk.begin(), bk.end());
  bk.erase(std::unique(bk.begin(), bk.end(),
                       [](double u, double v) { return std::abs(u - v) < 1e-14; }),
           bk.end());
  r.breaks = bk;
  for (std::size_t i = 0; i + 1 < bk.size(); ++i) {
    double x0 = bk[i];
    // re-expand both factors around x0 and convolve coefficient vectors
    auto local = [&](const PiecewisePoly& p) {
      std::size_t j = p.piece_index(0.5 * (bk[i] + bk[i + 1]));
      double s = x0 - p.breaks[j];  // (x - x_j) = t + s with t = x - x0
      const auto& c = p.coef[j];
      std::vector<double> out(c.size(), 0.0);
      for (std::size_t k = 0; k < c.size(); ++k)
        for (std::size_t m = 0; m <= k; ++m)
          out[m] += c[k] * binom(int(k), int(m)) * std::pow(s, double(k - m));
      return out;
    };
    auto ca = local(a), cb = local(b);
    std::vector<double> cc(ca.size() + cb.size() - 1, 0.0);
    for (std::size_t u = 0; u < ca.size(); ++u)
      for (std::size_t v = 0; v < cb.size(); ++v) cc[u + v] += ca[u] * cb[v];
    r.coef.push_back(std::move(cc));
  }
  return r;
}

/// Sum of two piecewise polynomials on the union of their breakpoints.
inline PiecewisePoly pp_add(const PiecewisePoly& a, const PiecewisePoly& b) {
  PiecewisePoly r;
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<double> bk = a.breaks;
  bk.insert(bk.end(), b.breaks.begin(), b.breaks.end());
  std::sort(bk.begin(), bk.end());
  bk.erase(std::unique(bk.begin(), bk.end(),
                       [](double u, double v) { return std::abs(u - v) < 1e-14; }),
           bk.end());
  r.breaks = bk;
  for (std::size_t i = 0; i + 1 < bk.size(); ++i) {
    double x0 = bk[i], mid = 0.5 * (bk[i] + bk[i + 1]);
    auto local = [&](const PiecewisePoly& p) {
      std::vector<double> out{0.0};
      if (p.empty() || mid < p.breaks.front() || mid >= p.breaks.back()) return out;
      std::size_t j = p.piece_index(mid);
      double s = x0 - p.breaks[j];
      const auto& c = p.coef[j];
      out.assign(c.size(), 0.0);
      for (std::size_t k = 0; k < c.size(); ++k)
        for (std::size_t m = 0; m <= k; ++m)
          out[m] += c[k] * binom(int(k), int(m)) * std::pow(s, double(k - m));
      return out;
    };
    auto ca = local(a), cb = local(b);
    std::vector<double> cc(std::max(ca.size(), cb.size()), 0.0);
    for (std::size_t u = 0; u < ca.size(); ++u) cc[u] += ca[u];
    for (std::size_t u = 0; u < cb.size(); ++u) cc[u] += cb[u];
    r.coef.push_back(std::move(cc));
  }
  return r;
}

inline PiecewisePoly pp_scale(PiecewisePoly p, double s) {
  for (auto& c : p.coef)
    for (double& v : c) v *= s;
  return p;
}

/// C^{deg-1} cutoff: 1 on |x| <= r/2, 0 outside |x| >= r, transition a
/// regularized-incomplete-beta smoothstep (polynomial of degree 2 deg - 1).
inline PiecewisePoly bump_poly(int deg, double r) {
  if (deg < 1 || r <= 0) throw std::invalid_argument("bump: need deg >= 1, r > 0");
  // S(u) = int_0^u t^m (1-t)^m dt / B(m+1, m+1), m = deg, S(0)=0, S(1)=1
  int m = deg;
  std::vector<double> s(std::size_t(2 * m + 2), 0.0);  // coefficients of S in u
  // t^m (1-t)^m = sum_k binom(m,k) (-1)^k t^{m+k}; the normalizer is the
  // beta integral B(m+1, m+1) = (m!)^2 / (2m+1)!, computed as a stable
  // product (the alternating sum cancels catastrophically for large m)
  double norm = 1.0 / double(2 * m + 1);
  for (int k = 1; k <= m; ++k) norm *= double(k) / double(m + k);
  for (int k = 0; k <= m; ++k) {
    double c = binom(m, k) * ((k % 2) ? -1.0 : 1.0);
    s[std::size_t(m + k + 1)] = c / double(m + k + 1);
  }
  for (double& c : s) c /= norm;
  // pieces: [-r, -r/2): S(2 + 2x/r); [-r/2, r/2): 1; [r/2, r]: S(2 - 2x/r)
  auto compose_affine = [&](double p, double q) {
    // S(p + q t) as coefficients in t
    std::vector<double> out(s.size(), 0.0);
    std::vector<double> pw{1.0};  // (p + q t)^k
    for (std::size_t k = 0; k < s.size(); ++k) {
      for (std::size_t j = 0; j < pw.size(); ++j) out[j] += s[k] * pw[j];
      // multiply pw by (p + q t)
      std::vector<double> nx(pw.size() + 1, 0.0);
      for (std::size_t j = 0; j < pw.size(); ++j) {
        nx[j] += p * pw[j];
        nx[j + 1] += q * pw[j];
      }
      pw = std::move(nx);
    }
    return out;
  };
  PiecewisePoly b;
  b.breaks = {-r, -r / 2.0, r / 2.0, r};
  // left piece, local t = x + r: S(2 + 2x/r) = S(2t/r)
  b.coef.push_back(compose_affine(0.0, 2.0 / r));
  b.coef.push_back({1.0});
  // right piece, local t = x - r/2: S(2 - 2x/r) = S(1 - 2t/r) = 1 - S(2t/r);
  // the 1 - S form keeps the composed coefficients small (no cancellation)
  {
    std::vector<double> right = compose_affine(0.0, 2.0 / r);
    for (double& c : right) c = -c;
    right[0] += 1.0;
    b.coef.push_back(std::move(right));
  }
  return b;
}

/// Closed-form smooth function with exact derivatives of every order.
/// Evaluations are complex; all norms take the modulus.
class AnalyticFunction {
 public:
  struct Node {
    virtual ~Node() = default;
    virtual int dim() const = 0;
    virtual cplx deriv(const MultiIndex& a, const std::vector<double>& x) const = 0;
    /// sup-norm support radius; infinity when not compactly supported
    virtual double support_radius() const {
      return std::numeric_limits<double>::infinity();
    }
    /// 1-d quadrature breakpoints (kinks / piece boundaries) inside the support
    virtual std::vector<double> breakpoints() const { return {}; }
  };

  explicit AnalyticFunction(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  int dim() const { return node_->dim(); }
  double support_radius() const { return node_->support_radius(); }
  std::vector<double> breakpoints() const { return node_->breakpoints(); }

  cplx derivative(const MultiIndex& a, const std::vector<double>& x) const {
    if (a.dim() != dim() || int(x.size()) != dim())
      throw std::invalid_argument("dimension mismatch");
    return node_->deriv(a, x);
  }
  cplx value(const std::vector<double>& x) const {
    return derivative(MultiIndex::zero(dim()), x);
  }
  cplx value1(double x) const { return value(std::vector<double>{x}); }
  cplx derivative1(int q, double x) const {
    return derivative(MultiIndex::unit(1, 0, q), std::vector<double>{x});
  }

  const std::shared_ptr<const Node>& node() const { return node_; }

  // --- factories (below, after the node definitions) ---
  static AnalyticFunction gaussian(double a, int n = 1);
  static AnalyticFunction poly_gauss(std::vector<cplx> p, double a);
  static AnalyticFunction sinc_phase(int n = 1);
  static AnalyticFunction piecewise(PiecewisePoly p);
  static AnalyticFunction bump(int deg = 8, double r = 1.0, int n = 1);
  static AnalyticFunction trig(std::vector<std::pair<std::vector<int>, cplx>> terms,
                               int n = 1);
  static AnalyticFunction tensor(std::vector<AnalyticFunction> factors);
  static AnalyticFunction sum(std::vector<std::pair<cplx, AnalyticFunction>> terms);
  static AnalyticFunction product(AnalyticFunction f, AnalyticFunction g);
  static AnalyticFunction translate(AnalyticFunction f, std::vector<double> shift);
  static AnalyticFunction translate_sum(
      AnalyticFunction psi, std::vector<std::pair<std::vector<double>, cplx>> terms);
  static AnalyticFunction periodic_sum(AnalyticFunction f, int J);
  static AnalyticFunction gauss_cell_average(double a);
  static AnalyticFunction convolution(AnalyticFunction f, AnalyticFunction kernel,
                                      int points_per_unit = 64);
  static AnalyticFunction fourier_of_piecewise(PiecewisePoly chi);
  static AnalyticFunction zero(int n = 1);

 private:
  std::shared_ptr<const Node> node_;
};

namespace nodes {

using Node = AnalyticFunction::Node;

/// p(x) e^{-a x^2}; the derivative map p |-> p' - 2 a x p is closed on
/// polynomials (Hermite recursion), cached per order.
struct PolyGauss1 final : Node {
  std::vector<cplx> p0;
  double a;
  mutable std::vector<std::vector<cplx>> cache;

  PolyGauss1(std::vector<cplx> p, double aa) : p0(std::move(p)), a(aa) {
    if (a <= 0) throw std::invalid_argument("gaussian: a must be positive");
    cache.push_back(p0);
  }
  int dim() const override { return 1; }
  const std::vector<cplx>& poly(int q) const {
    while (int(cache.size()) <= q) {
      const auto& c = cache.back();
      std::vector<cplx> nx(c.size() + 1, cplx(0.0));
      for (std::size_t k = 1; k < c.size(); ++k) nx[k - 1] += double(k) * c[k];
      for (std::size_t k = 0; k < c.size(); ++k) nx[k + 1] -= 2.0 * a * c[k];
      cache.push_back(std::move(nx));
    }
    return cache[std::size_t(q)];
  }
  cplx deriv(const MultiIndex& al, const std::vector<double>& x) const override {
    const auto& c = poly(al[0]);
    cplx v(0.0);
    for (std::size_t k = c.size(); k-- > 0;) v = v * x[0] + c[k];
    return v * std::exp(-a * x[0] * x[0]);
  }
};

/// chi(x) = int_0^1 e^{-2 pi i xi x} d xi = (1 - e^{-2 pi i x}) / (2 pi i x);
/// chi^{(q)}(x) = (-2 pi i)^q I_q(2 pi x).
struct SincPhase1 final : Node {
  int dim() const override { return 1; }
  cplx deriv(const MultiIndex& al, const std::vector<double>& x) const override {
    int q = al[0];
    auto I = detail::unit_interval_moments(2.0 * kPi * x[0], q);
    cplx f = std::pow(cplx(0.0, -2.0 * kPi), q);
    return f * I[std::size_t(q)];
  }
};

struct Piecewise1 final : Node {
  PiecewisePoly base;
  mutable std::vector<PiecewisePoly> ds;

  explicit Piecewise1(PiecewisePoly p) : base(std::move(p)) { ds.push_back(base); }
  int dim() const override { return 1; }
  const PiecewisePoly& order(int q) const {
    while (int(ds.size()) <= q) ds.push_back(ds.back().derivative());
    return ds[std::size_t(q)];
  }
  cplx deriv(const MultiIndex& al, const std::vector<double>& x) const override {
    return cplx(order(al[0]).eval(x[0]), 0.0);
  }
  double support_radius() const override {
    if (base.empty()) return 0.0;
    return std::max(std::abs(base.breaks.front()), std::abs(base.breaks.back()));
  }
  std::vector<double> breakpoints() const override { return base.breaks; }
};

struct Trig final : Node {
  int n;
  std::vector<std::pair<std::vector<int>, cplx>> terms;

  Trig(int nn, std::vector<std::pair<std::vector<int>, cplx>> t)
      : n(nn), terms(std::move(t)) {}
  int dim() const override { return n; }
  cplx deriv(const MultiIndex& al, const std::vector<double>& x) const override {
    cplx s(0.0);
    for (const auto& [k, c] : terms) {
      cplx f = c;
      double phase = 0.0;
      for (int i = 0; i < n; ++i) {
        f *= std::pow(cplx(0.0, 2.0 * kPi * k[std::size_t(i)]), al[i]);
        phase += 2.0 * kPi * k[std::size_t(i)] * x[std::size_t(i)];
      }
      s += f * std::exp(cplx(0.0, phase));
    }
    return s;
  }
};

struct Tensor final : Node {
  std::vector<AnalyticFunction> factors;

  explicit Tensor(std::vector<AnalyticFunction> f) : factors(std::move(f)) {
    for (const auto& g : factors)
      if (g.dim() != 1) throw std::invalid_argument("tensor factors must be 1-d");
  }
  int dim() const override { return int(factors.size()); }
  cplx deriv(const MultiIndex& al, const std::vector<double>& x) const override {
    cplx v(1.0);
    for (std::size_t i = 0; i < factors.size(); ++i)
      v *= factors[i].derivative(MultiIndex::unit(1, 0, al[int(i)]),
                                 std::vector<double>{x[i]});
    return v;
  }
  double support_radius() const override {
    double r = 0.0;
    for (const auto& g : factors) r = std::max(r, g.support_radius());
    return r;
  }
};

struct Sum final : Node {
  std::vector<std::pair<cplx, AnalyticFunction>> terms;

  explicit Sum(std::vector<std::pair<cplx, AnalyticFunction>> t) : terms(std::move(t)) {
    for (const auto& [c, f] : terms)
      if (f.dim() != terms.front().second.dim())
        throw std::invalid_argument("sum terms must share dimension");
  }
  int dim() const override { return terms.front().second.dim(); }
  cplx deriv(const MultiIndex& al, const std::vector<double>& x) const override {
    cplx s(0.0);
    for (const auto& [c, f] : terms) s += c * f.derivative(al, x);
    return s;
  }
  double support_radius() const override {
    double r = 0.0;
    for (const auto& [c, f] : terms) r = std::max(r, f.support_radius());
    return r;
  }
};

/// Enumerates beta <= alpha componentwise.
inline void for_each_leq(const MultiIndex& a, const std::function<void(const MultiIndex&)>& f) {
  std::vector<int> b(std::size_t(a.dim()), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == a.dim()) {
      f(MultiIndex(b));
      return;
    }
    for (int v = 0; v <= a[i]; ++v) {
      b[std::size_t(i)] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

struct Product final : Node {
  AnalyticFunction f, g;

  Product(AnalyticFunction ff, AnalyticFunction gg) : f(std::move(ff)), g(std::move(gg)) {
    if (f.dim() != g.dim()) throw std::invalid_argument("product dimension mismatch");
  }
  int dim() const override { return f.dim(); }
  cplx deriv(const MultiIndex& al, const std::vector<double>& x) const override {
    cplx s(0.0);
    for_each_leq(al, [&](const MultiIndex& b) {
      MultiIndex r = al;
      for (int i = 0; i < al.dim(); ++i) r.c[std::size_t(i)] -= b[i];
      s += multi_binom(al, b) * f.derivative(b, x) * g.derivative(r, x);
    });
    return s;
  }
  double support_radius() const override {
    return std::min(f.support_radius(), g.support_radius());
  }
  std::vector<double> breakpoints() const override {
    auto b = f.breakpoints();
    auto c = g.breakpoints();
    b.insert(b.end(), c.begin(), c.end());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
  }
};

struct Translate final : Node {
  AnalyticFunction f;
  std::vector<double> shift;

  Translate(AnalyticFunction ff, std::vector<double> s) : f(std::move(ff)), shift(std::move(s)) {
    if (int(shift.size()) != f.dim()) throw std::invalid_argument("shift dimension mismatch");
  }
  int dim() const override { return f.dim(); }
  cplx deriv(const MultiIndex& al, const std::vector<double>& x) const override {
    std::vector<double> y(x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= shift[i];
    return f.derivative(al, y);
  }
  double support_radius() const override {
    double m = 0.0;
    for (double s : shift) m = std::max(m, std::abs(s));
    return f.support_radius() + m;
  }
  std::vector<double> breakpoints() const override {
    auto b = f.breakpoints();
    for (double& x : b) x += shift[0];
    return b;
  }
};

struct TranslateSum final : Node {
  AnalyticFunction psi;
  std::vector<std::pair<std::vector<double>, cplx>> terms;

  TranslateSum(AnalyticFunction p, std::vector<std::pair<std::vector<double>, cplx>> t)
      : psi(std::move(p)), terms(std::move(t)) {}
  int dim() const override { return psi.dim(); }
  cplx deriv(const MultiIndex& al, const std::vector<double>& x) const override {
    cplx s(0.0);
    std::vector<double> y(x.size());
    for (const auto& [j, c] : terms) {
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] - j[i];
      s += c * psi.derivative(al, y);
    }
    return s;
  }
  double support_radius() const override {
    double r = psi.support_radius();
    if (!std::isfinite(r)) return r;
    double m = 0.0;
    for (const auto& [j, c] : terms)
      for (double ji : j) m = std::max(m, std::abs(ji));
    return r + m;
  }
};

struct PeriodicSum final : Node {
  AnalyticFunction f;
  int J;

  PeriodicSum(AnalyticFunction ff, int JJ) : f(std::move(ff)), J(JJ) {}
  int dim() const override { return f.dim(); }
  cplx deriv(const MultiIndex& al, const std::vector<double>& x) const override {
    int n = f.dim();
    std::vector<int> j(std::size_t(n), -J);
    cplx s(0.0);
    std::vector<double> y(x.size());
    while (true) {
      for (int i = 0; i < n; ++i) y[std::size_t(i)] = x[std::size_t(i)] - j[std::size_t(i)];
      s += f.derivative(al, y);
      int i = 0;
      for (; i < n; ++i) {
        if (++j[std::size_t(i)] <= J) break;
        j[std::size_t(i)] = -J;
      }
      if (i == n) break;
    }
    return s;
  }
};

/// psi(x) = int_{x-1}^x phi0, phi0(x) = sqrt(b/pi) e^{-b x^2} with b = 2a
/// (the normalized squared modulus of a Gaussian(a)); psi via erf and
/// psi^{(q)}(x) = phi0^{(q-1)}(x) - phi0^{(q-1)}(x-1) for q >= 1.
struct GaussCellAverage1 final : Node {
  double b;
  PolyGauss1 phi0;

  explicit GaussCellAverage1(double a)
      : b(2.0 * a), phi0({cplx(std::sqrt(2.0 * a / kPi), 0.0)}, 2.0 * a) {}
  int dim() const override { return 1; }
  cplx deriv(const MultiIndex& al, const std::vector<double>& x) const override {
    int q = al[0];
    if (q == 0) {
      double rb = std::sqrt(b);
      return cplx(0.5 * (std::erf(rb * x[0]) - std::erf(rb * (x[0] - 1.0))), 0.0);
    }
    MultiIndex qm1 = MultiIndex::unit(1, 0, q - 1);
    return phi0.deriv(qm1, x) - phi0.deriv(qm1, {x[0] - 1.0});
  }
};

/// Composite Simpson with panels split at the kernel's breakpoints.
template <class F>
cplx simpson_panels(F&& f, const std::vector<double>& edges, int points_per_unit) {
  cplx total(0.0);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double a = edges[i], b = edges[i + 1];
    if (b <= a) continue;
    int m = std::max(2, int(std::ceil((b - a) * points_per_unit / 2.0)) * 2);
    double h = (b - a) / m;
    // edges nudged inward so half-open piece boundaries read the panel's side
    double nud = (b - a) * 1e-12;
    cplx s = f(a + nud) + f(b - nud);
    for (int k = 1; k < m; ++k) s += f(a + k * h) * ((k % 2) ? 4.0 : 2.0);
    total += s * (h / 3.0);
  }
  return total;
}

/// (f * kernel)(x) with compactly supported kernel; derivatives land on f, so
/// kernel kinks never meet the differentiation.
struct Convolution1 final : Node {
  AnalyticFunction f, kernel;
  int ppu;
  std::vector<double> kbreaks;

  Convolution1(AnalyticFunction ff, AnalyticFunction k, int points_per_unit)
      : f(std::move(ff)), kernel(std::move(k)), ppu(points_per_unit) {
    if (!std::isfinite(kernel.support_radius()))
      throw std::invalid_argument("convolution kernel must be compactly supported");
    kbreaks = kernel.breakpoints();
    if (kbreaks.empty())
      kbreaks = {-kernel.support_radius(), kernel.support_radius()};
  }
  int dim() const override { return 1; }
  cplx deriv(const MultiIndex& al, const std::vector<double>& x) const override {
    auto g = [&](double t) {
      return f.derivative(al, {x[0] - t}) * kernel.value(std::vector<double>{t});
    };
    return simpson_panels(g, kbreaks, ppu);
  }
  double support_radius() const override {
    double rf = f.support_radius();
    if (!std::isfinite(rf)) return rf;
    return rf + kernel.support_radius();
  }
};

/// hat-chi(x) = int chi(xi) e^{-2 pi i xi x} d xi for piecewise-polynomial chi,
/// exactly, per piece via scaled unit-interval moments; the q-th derivative
/// transforms (-2 pi i xi)^q chi(xi), again piecewise polynomial.
struct FourierPiecewise1 final : Node {
  PiecewisePoly chi;

  explicit FourierPiecewise1(PiecewisePoly c) : chi(std::move(c)) {}
  int dim() const override { return 1; }
  cplx deriv(const MultiIndex& al, const std::vector<double>& x) const override {
    int q = al[0];
    cplx total(0.0);
    for (std::size_t i = 0; i + 1 < chi.breaks.size(); ++i) {
      double a = chi.breaks[i], b = chi.breaks[i + 1];
      double L = b - a;
      if (L <= 0) continue;
      // int_a^b (-2 pi i xi)^q p(xi) e^{-2 pi i xi x} d xi
      //   = L e^{-2 pi i a x} int_0^1 g(u) e^{-i (2 pi L x) u} du,
      // g(u) = (-2 pi i (a + L u))^q p(a + L u), expanded in u
      const auto& c = chi.coef[i];
      std::vector<cplx> g(c.size(), cplx(0.0));
      for (std::size_t k = 0; k < c.size(); ++k) {
        // p's local basis is (xi - a)^k = (L u)^k
        g[k] = c[k] * std::pow(L, double(k));
      }
      for (int rep = 0; rep < q; ++rep) {
        std::vector<cplx> nx(g.size() + 1, cplx(0.0));
        cplx w0 = cplx(0.0, -2.0 * kPi) * a;
        cplx w1 = cplx(0.0, -2.0 * kPi) * L;
        for (std::size_t k = 0; k < g.size(); ++k) {
          nx[k] += w0 * g[k];
          nx[k + 1] += w1 * g[k];
        }
        g = std::move(nx);
      }
      auto I = detail::unit_interval_moments(2.0 * kPi * L * x[0], int(g.size()) - 1);
      cplx piece(0.0);
      for (std::size_t k = 0; k < g.size(); ++k) piece += g[k] * I[k];
      total += L * std::exp(cplx(0.0, -2.0 * kPi * a * x[0])) * piece;
    }
    return total;
  }
};

struct Zero final : Node {
  int n;
  explicit Zero(int nn) : n(nn) {}
  int dim() const override { return n; }
  cplx deriv(const MultiIndex&, const std::vector<double>&) const override {
    return cplx(0.0);
  }
  double support_radius() const override { return 0.0; }
};

}  // namespace nodes

inline AnalyticFunction AnalyticFunction::poly_gauss(std::vector<cplx> p, double a) {
  return AnalyticFunction(std::make_shared<nodes::PolyGauss1>(std::move(p), a));
}
inline AnalyticFunction AnalyticFunction::gaussian(double a, int n) {
  if (n == 1) return poly_gauss({cplx(1.0)}, a);
  std::vector<AnalyticFunction> fs(std::size_t(n), poly_gauss({cplx(1.0)}, a));
  return tensor(std::move(fs));
}
inline AnalyticFunction AnalyticFunction::sinc_phase(int n) {
  if (n == 1) return AnalyticFunction(std::make_shared<nodes::SincPhase1>());
  std::vector<AnalyticFunction> fs(std::size_t(n),
                                   AnalyticFunction(std::make_shared<nodes::SincPhase1>()));
  return tensor(std::move(fs));
}
inline AnalyticFunction AnalyticFunction::piecewise(PiecewisePoly p) {
  return AnalyticFunction(std::make_shared<nodes::Piecewise1>(std::move(p)));
}
inline AnalyticFunction AnalyticFunction::bump(int deg, double r, int n) {
  if (n == 1) return piecewise(bump_poly(deg, r));
  std::vector<AnalyticFunction> fs(std::size_t(n), piecewise(bump_poly(deg, r)));
  return tensor(std::move(fs));
}
inline AnalyticFunction AnalyticFunction::trig(
    std::vector<std::pair<std::vector<int>, cplx>> terms, int n) {
  return AnalyticFunction(std::make_shared<nodes::Trig>(n, std::move(terms)));
}
inline AnalyticFunction AnalyticFunction::tensor(std::vector<AnalyticFunction> factors) {
  return AnalyticFunction(std::make_shared<nodes::Tensor>(std::move(factors)));
}
inline AnalyticFunction AnalyticFunction::sum(
    std::vector<std::pair<cplx, AnalyticFunction>> terms) {
  return AnalyticFunction(std::make_shared<nodes::Sum>(std::move(terms)));
}
inline AnalyticFunction AnalyticFunction::product(AnalyticFunction f, AnalyticFunction g) {
  return AnalyticFunction(std::make_shared<nodes::Product>(std::move(f), std::move(g)));
}
inline AnalyticFunction AnalyticFunction::translate(AnalyticFunction f,
                                                    std::vector<double> shift) {
  return AnalyticFunction(std::make_shared<nodes::Translate>(std::move(f), std::move(shift)));
}
inline AnalyticFunction AnalyticFunction::translate_sum(
    AnalyticFunction psi, std::vector<std::pair<std::vector<double>, cplx>> terms) {
  return AnalyticFunction(
      std::make_shared<nodes::TranslateSum>(std::move(psi), std::move(terms)));
}
inline AnalyticFunction AnalyticFunction::periodic_sum(AnalyticFunction f, int J) {
  return AnalyticFunction(std::make_shared<nodes::PeriodicSum>(std::move(f), J));
}
inline AnalyticFunction AnalyticFunction::gauss_cell_average(double a) {
  return AnalyticFunction(std::make_shared<nodes::GaussCellAverage1>(a));
}
inline AnalyticFunction AnalyticFunction::convolution(AnalyticFunction f,
                                                      AnalyticFunction kernel,
                                                      int points_per_unit) {
  return AnalyticFunction(
      std::make_shared<nodes::Convolution1>(std::move(f), std::move(kernel), points_per_unit));
}
inline AnalyticFunction AnalyticFunction::fourier_of_piecewise(PiecewisePoly chi) {
  return AnalyticFunction(std::make_shared<nodes::FourierPiecewise1>(std::move(chi)));
}
inline AnalyticFunction AnalyticFunction::zero(int n) {
  return AnalyticFunction(std::make_shared<nodes::Zero>(n));
}

}  // namespace gsw
