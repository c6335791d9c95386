#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "analytic.hpp"
#include "numerics.hpp"
#include "weight_functions.hpp"

namespace gsw {

/// Uniform grid on the half-open box [-T, T)^n with spacing h. T/h and 1/h are
/// integral so unit cells are lattice-exact and, with the power-of-two
/// defaults, cell blocks align with the pairwise-sum tree.
struct GridSpec {
  int n = 1;
  double T = 32.0;
  double h = 1.0 / 64.0;

  static GridSpec standard(int n) {
    if (n == 1) return GridSpec{1, 32.0, 1.0 / 64.0};
    if (n == 2) return GridSpec{2, 16.0, 1.0 / 16.0};
    throw std::invalid_argument("standard grids cover n = 1, 2");
  }

  void validate() const {
    if (n < 1 || T <= 0 || h <= 0) throw std::invalid_argument("bad grid parameters");
    double th = T / h, ih = 1.0 / h;
    if (std::abs(th - std::round(th)) > 1e-9 || std::abs(ih - std::round(ih)) > 1e-9)
      throw std::invalid_argument("grid requires T/h and 1/h integral");
  }

  std::int64_t per_axis() const { return std::llround(2.0 * T / h); }
  std::int64_t points_per_cell_axis() const { return std::llround(1.0 / h); }
  std::int64_t cells_per_axis() const { return std::llround(2.0 * T); }
  std::int64_t total_points() const {
    std::int64_t t = 1;
    for (int d = 0; d < n; ++d) t *= per_axis();
    return t;
  }
  /// default truncation radius for sequence supports
  int default_J() const { return int(std::llround(T / 2.0)); }

  /// grid point of the row-major flat index (last axis fastest)
  std::vector<double> point(std::int64_t flat) const {
    std::vector<double> x(std::size_t(n), 0.0);
    std::int64_t pa = per_axis(), off = pa / 2;
    for (int d = n - 1; d >= 0; --d) {
      x[std::size_t(d)] = double(flat % pa - off) * h;
      flat /= pa;
    }
    return x;
  }
};

/// Discrete models of translation-invariant Banach function spaces:
/// Riemann-sum L^p, the sup model L0 with a vanishing-tail certificate, and
/// the mixed norm L^{p1,p2} on two-dimensional grids.
struct BanachSpaceModel {
  enum class Kind { Lp, L0, MixedLp };
  Kind kind = Kind::Lp;
  double p = 2.0;        // Lp exponent, may be infinity
  double p1 = 2.0, p2 = 2.0;
  GridSpec grid;

  static BanachSpaceModel lp(double p, GridSpec g) {
    if (p < 1.0) throw std::invalid_argument("Lp needs p >= 1");
    g.validate();
    return BanachSpaceModel{Kind::Lp, p, 0, 0, g};
  }
  static BanachSpaceModel l0(GridSpec g) {
    g.validate();
    return BanachSpaceModel{Kind::L0, 0, 0, 0, g};
  }
  static BanachSpaceModel mixed_lp(double p1, double p2, GridSpec g) {
    if (p1 < 1.0 || p2 < 1.0) throw std::invalid_argument("mixed Lp needs p1, p2 >= 1");
    if (g.n != 2) throw std::invalid_argument("mixed norm model requires a 2-d grid");
    g.validate();
    return BanachSpaceModel{Kind::MixedLp, 0, p1, p2, g};
  }

  std::string str() const {
    if (kind == Kind::L0) return "L0";
    if (kind == Kind::MixedLp)
      return "L(" + std::to_string(p1) + "," + std::to_string(p2) + ")";
    if (std::isinf(p)) return "Linf";
    return "L" + std::to_string(p);
  }
};

struct NormResult {
  double value = 0.0;
  double tail = 0.0;   // same norm restricted to the outer unit shell of the box
  bool tail_ok = true; // tail <= 1e-8 relative (the L0 vanishing certificate proxy)
};

namespace detail {

inline double lp_reduce(std::span<const double> mags, double p, double cell_measure) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : mags) m = std::max(m, v);
    return m;
  }
  if (p == 1.0) return cell_measure * pairwise_sum(mags);
  std::vector<double> pw(mags.size());
  for (std::size_t i = 0; i < mags.size(); ++i) pw[i] = std::pow(mags[i], p);
  return std::pow(cell_measure * pairwise_sum(pw), 1.0 / p);
}

}  // namespace detail

/// ||f||_E from the row-major grid samples. The scaling cell_measure * sum is
/// applied before the single 1/p power so power-of-two factors cancel exactly.
inline NormResult norm_E(const BanachSpaceModel& model, std::span<const cplx> samples) {
  const GridSpec& g = model.grid;
  if (std::int64_t(samples.size()) != g.total_points())
    throw std::invalid_argument("sample count does not match the grid");
  std::vector<double> mags(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) mags[i] = std::abs(samples[i]);

  double hn = std::pow(g.h, g.n);
  NormResult out;
  if (model.kind == BanachSpaceModel::Kind::MixedLp) {
    std::int64_t pa = g.per_axis();
    std::vector<double> rows(std::size_t(pa), 0.0);
    for (std::int64_t r = 0; r < pa; ++r)
      rows[std::size_t(r)] = detail::lp_reduce(
          std::span<const double>(mags).subspan(std::size_t(r * pa), std::size_t(pa)),
          model.p2, g.h);
    out.value = detail::lp_reduce(rows, model.p1, g.h);
  } else {
    double p = (model.kind == BanachSpaceModel::Kind::L0)
                   ? std::numeric_limits<double>::infinity()
                   : model.p;
    out.value = detail::lp_reduce(mags, p, hn);
  }

  // outer unit shell |x|_inf >= T - 1
  std::vector<double> shell(mags.size(), 0.0);
  bool any = false;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    auto x = g.point(std::int64_t(i));
    double mx = 0.0;
    for (double xd : x) mx = std::max(mx, std::abs(xd));
    if (mx >= g.T - 1.0) {
      shell[i] = mags[i];
      any = true;
    }
  }
  if (any) {
    if (model.kind == BanachSpaceModel::Kind::MixedLp) {
      std::int64_t pa = g.per_axis();
      std::vector<double> rows(std::size_t(pa), 0.0);
      for (std::int64_t r = 0; r < pa; ++r)
        rows[std::size_t(r)] = detail::lp_reduce(
            std::span<const double>(shell).subspan(std::size_t(r * pa), std::size_t(pa)),
            model.p2, g.h);
      out.tail = detail::lp_reduce(rows, model.p1, g.h);
    } else {
      double p = (model.kind == BanachSpaceModel::Kind::L0)
                     ? std::numeric_limits<double>::infinity()
                     : model.p;
      out.tail = detail::lp_reduce(shell, p, hn);
    }
  }
  out.tail_ok = out.tail <= 1e-8 * out.value || out.value == 0.0;
  return out;
}

/// Grid sample set with, when available, an exact derivative provider.
class GridFunction {
 public:
  static GridFunction analytic(GridSpec g, AnalyticFunction f) {
    g.validate();
    if (f.dim() != g.n) throw std::invalid_argument("function/grid dimension mismatch");
    GridFunction out;
    out.grid_ = g;
    out.fn_ = std::move(f);
    return out;
  }
  static GridFunction synthesized(GridSpec g, std::vector<cplx> samples) {
    g.validate();
    if (std::int64_t(samples.size()) != g.total_points())
      throw std::invalid_argument("sample count does not match the grid");
    GridFunction out;
    out.grid_ = g;
    out.samples_ = std::move(samples);
    return out;
  }

  const GridSpec& grid() const { return grid_; }
  bool has_derivatives() const { return fn_.has_value(); }
  const AnalyticFunction& provider() const {
    if (!fn_) throw std::runtime_error("grid function has no derivative provider");
    return *fn_;
  }

  std::vector<cplx> derivative_samples(const MultiIndex& a) const {
    if (!fn_) {
      if (a.order() != 0)
        throw std::runtime_error("synthesized grid function has no derivative provider");
      return samples_;
    }
    std::int64_t N = grid_.total_points();
    std::vector<cplx> out(std::size_t(N), cplx(0.0));
    for (std::int64_t i = 0; i < N; ++i) out[std::size_t(i)] = fn_->derivative(a, grid_.point(i));
    return out;
  }
  std::vector<cplx> samples() const { return derivative_samples(MultiIndex::zero(grid_.n)); }

 private:
  GridSpec grid_;
  std::optional<AnalyticFunction> fn_;
  std::vector<cplx> samples_;
};

/// Finitely supported sequence on Z^n truncated to |j|_inf <= J, row-major.
struct SequenceData {
  int n = 1;
  int J = 16;
  std::vector<cplx> c;  // (2J+1)^n entries

  static SequenceData zero(int n, int J) {
    std::int64_t N = 1;
    for (int d = 0; d < n; ++d) N *= 2 * J + 1;
    return SequenceData{n, J, std::vector<cplx>(std::size_t(N), cplx(0.0))};
  }
  static SequenceData delta(int n, int J, std::vector<int> k = {}) {
    SequenceData s = zero(n, J);
    if (k.empty()) k.assign(std::size_t(n), 0);
    s.at(k) = cplx(1.0);
    return s;
  }

  std::int64_t flat(std::span<const int> j) const {
    std::int64_t f = 0;
    for (int d = 0; d < n; ++d) {
      if (std::abs(j[std::size_t(d)]) > J) return -1;
      f = f * (2 * J + 1) + (j[std::size_t(d)] + J);
    }
    return f;
  }
  cplx& at(std::span<const int> j) {
    std::int64_t f = flat(j);
    if (f < 0) throw std::out_of_range("lattice index outside truncation");
    return c[std::size_t(f)];
  }
  cplx get(std::span<const int> j) const {
    std::int64_t f = flat(j);
    return f < 0 ? cplx(0.0) : c[std::size_t(f)];
  }
  std::vector<int> index_of(std::int64_t flat_idx) const {
    std::vector<int> j(std::size_t(n), 0);
    for (int d = n - 1; d >= 0; --d) {
      j[std::size_t(d)] = int(flat_idx % (2 * J + 1)) - J;
      flat_idx /= 2 * J + 1;
    }
    return j;
  }
};

/// ||c||_{E_d}: materializes sum_j |c_j| 1_{[0,1)^n}(x - j) on the model grid
/// and applies norm_E. For Lp models the cell blocks align with the pairwise
/// tree, so the result agrees with the lattice l^p norm exactly.
inline NormResult ed_norm(const BanachSpaceModel& model, const SequenceData& c) {
  const GridSpec& g = model.grid;
  if (c.n != g.n) throw std::invalid_argument("sequence/grid dimension mismatch");
  if (c.J + 1 > int(g.T)) throw std::invalid_argument("sequence truncation exceeds the grid box");
  std::int64_t N = g.total_points();
  std::vector<cplx> tile(std::size_t(N), cplx(0.0));
  std::vector<int> j(std::size_t(g.n), 0);
  for (std::int64_t i = 0; i < N; ++i) {
    auto x = g.point(i);
    for (int d = 0; d < g.n; ++d) j[std::size_t(d)] = int(std::floor(x[std::size_t(d)]));
    tile[std::size_t(i)] = std::abs(c.get(j));
  }
  return norm_E(model, tile);
}

struct WeightedNorm {
  NormResult norm;
  bool saturated = true;
};

/// ||(c_j w(j))_j||_{E_d}
inline WeightedNorm weighted_ed_norm(const BanachSpaceModel& model, const SequenceData& c,
                                     const WeightFunction& w) {
  if (w.dim() != c.n) throw std::invalid_argument("weight/sequence dimension mismatch");
  SequenceData wc = c;
  bool sat = true;
  std::vector<double> x(std::size_t(c.n), 0.0);
  for (std::int64_t i = 0; i < std::int64_t(c.c.size()); ++i) {
    auto j = c.index_of(i);
    for (int d = 0; d < c.n; ++d) x[std::size_t(d)] = double(j[std::size_t(d)]);
    auto v = w.log_eval(x);
    sat = sat && v.saturated;
    wc.c[std::size_t(i)] = c.c[std::size_t(i)] * std::exp(v.log_w);
  }
  return WeightedNorm{ed_norm(model, wc), sat};
}

/// x^m represented exactly on [-R, R] as a single-piece polynomial; used to
/// multiply grid functions by monomials without leaving the closed-form tree.
inline AnalyticFunction monomial_on_box(int m, double R) {
  PiecewisePoly p;
  p.breaks = {-R, R};
  std::vector<double> coef(std::size_t(m) + 1, 0.0);
  for (int k = 0; k <= m; ++k)
    coef[std::size_t(k)] = binom(m, k) * std::pow(-R, double(m - k));
  p.coef = {std::move(coef)};
  return AnalyticFunction::piecewise(std::move(p));
}

}  // namespace gsw
