#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "grid.hpp"
#include "spaces.hpp"

namespace gsw {

/// C0 * (n+1)^{(n+1)/2} * sum_j <j>^{-(n+1)} over the lattice cells of the box.
inline double lattice_decay_constant(const GridSpec& g) {
  std::vector<double> terms;
  std::int64_t cells = 1;
  for (int d = 0; d < g.n; ++d) cells *= g.cells_per_axis();
  for (std::int64_t i = 0; i < cells; ++i) {
    std::int64_t f = i;
    double s = 1.0;
    for (int d = 0; d < g.n; ++d) {
      double j = double(f % g.cells_per_axis()) - g.T;
      f /= g.cells_per_axis();
      s += j * j;
    }
    terms.push_back(std::pow(s, -0.5 * (g.n + 1)));
  }
  return std::pow(double(g.n + 1), 0.5 * (g.n + 1)) * pairwise_sum(terms);
}

/// Synthesis window with its decay certificate sup |psi(x)| <x>^{n+1}.
struct Window {
  enum class Kind { Interpolating, Partition, Generic };
  AnalyticFunction fn = AnalyticFunction::zero(1);
  GridSpec grid;
  Kind kind = Kind::Generic;
  double decay_norm = 0.0;  // sup over the box and a geometric tail sample
  bool decay_ok = false;    // tail samples stay below the box supremum
  Verdict invariant;        // the kind's defining identity, checked on the grid

  GridFunction grid_function() const { return GridFunction::analytic(grid, fn); }
};

namespace detail {

inline void window_decay(Window& w) {
  const GridSpec& g = w.grid;
  double sup = 0.0;
  for (std::int64_t i = 0; i < g.total_points(); ++i) {
    auto x = g.point(i);
    sup = std::max(sup, std::abs(w.fn.value(x)) * std::pow(bracket(x), double(g.n + 1)));
  }
  w.decay_norm = sup;
  bool ok = true;
  for (double r = g.T; r <= 8.0 * g.T; r *= 1.5) {
    std::vector<double> x(std::size_t(g.n), 0.0);
    for (int d = 0; d < g.n; ++d) {
      std::fill(x.begin(), x.end(), 0.0);
      x[std::size_t(d)] = r;
      ok = ok && std::abs(w.fn.value(x)) * std::pow(bracket(x), double(g.n + 1)) <= sup + 1e-12;
      x[std::size_t(d)] = -r;
      ok = ok && std::abs(w.fn.value(x)) * std::pow(bracket(x), double(g.n + 1)) <= sup + 1e-12;
    }
  }
  w.decay_ok = ok;
}

}  // namespace detail

inline Window generic_window(AnalyticFunction psi, GridSpec g) {
  g.validate();
  if (psi.dim() != g.n) throw std::invalid_argument("window/grid dimension mismatch");
  Window w;
  w.fn = std::move(psi);
  w.grid = g;
  w.kind = Window::Kind::Generic;
  detail::window_decay(w);
  w.invariant = Verdict::make_witnessed({{"decay_norm", w.decay_norm}});
  return w;
}

/// psi = (phi / phi(0)) * prod_i e^{-pi i x_i} sin(pi x_i)/(pi x_i); the factor
/// is the transform of 1_{[0,1]^n}, so psi(j) = delta_{j,0} on the lattice.
inline Window interpolating_window(const AnalyticFunction& phi, GridSpec g,
                                   double tol = 1e-10) {
  g.validate();
  if (phi.dim() != g.n) throw std::invalid_argument("window/grid dimension mismatch");
  cplx p0 = phi.value(std::vector<double>(std::size_t(g.n), 0.0));
  if (std::abs(p0) < 1e-300)
    throw std::invalid_argument("interpolating window: phi(0) must be nonzero");
  AnalyticFunction base =
      std::abs(p0 - cplx(1.0)) < 1e-15
          ? phi
          : AnalyticFunction::sum({{cplx(1.0) / p0, phi}});
  Window w;
  w.fn = AnalyticFunction::product(base, AnalyticFunction::sinc_phase(g.n));
  w.grid = g;
  w.kind = Window::Kind::Interpolating;
  detail::window_decay(w);

  int J = g.default_J();
  double worst = 0.0;
  std::vector<int> j(std::size_t(g.n), -J);
  std::vector<double> x(std::size_t(g.n), 0.0);
  while (true) {
    bool origin = true;
    for (int d = 0; d < g.n; ++d) {
      x[std::size_t(d)] = double(j[std::size_t(d)]);
      origin = origin && j[std::size_t(d)] == 0;
    }
    double err = std::abs(w.fn.value(x) - (origin ? cplx(1.0) : cplx(0.0)));
    worst = std::max(worst, err);
    int d = 0;
    for (; d < g.n; ++d) {
      if (++j[std::size_t(d)] <= J) break;
      j[std::size_t(d)] = -J;
    }
    if (d == g.n) break;
  }
  w.invariant = worst <= tol
                    ? Verdict::make_witnessed({{"max_lattice_error", worst}})
                    : Verdict::make_falsified({{"max_lattice_error", worst}});
  w.invariant.horizon["lattice_J"] = double(J);
  return w;
}

/// phi0 = |phi|^2 / || |phi|^2 ||_L1 for phi = Gaussian(a), then the cell
/// average psi(x) = int_{[0,1]^n} phi0(x - t) dt; translates of psi tile to 1.
inline Window partition_window(double a, GridSpec g, double tol = 1e-8) {
  g.validate();
  if (a <= 0) throw std::invalid_argument("partition window: a must be positive");
  std::vector<AnalyticFunction> axes(std::size_t(g.n),
                                     AnalyticFunction::gauss_cell_average(a));
  Window w;
  w.fn = g.n == 1 ? axes[0] : AnalyticFunction::tensor(std::move(axes));
  w.grid = g;
  w.kind = Window::Kind::Partition;
  detail::window_decay(w);

  int J = g.default_J();
  AnalyticFunction tiling = AnalyticFunction::periodic_sum(w.fn, J);
  std::int64_t ppc = g.points_per_cell_axis();
  std::int64_t N = 1;
  for (int d = 0; d < g.n; ++d) N *= ppc;
  double worst = 0.0;
  for (std::int64_t i = 0; i < N; ++i) {
    std::int64_t f = i;
    std::vector<double> x(std::size_t(g.n), 0.0);
    for (int d = g.n - 1; d >= 0; --d) {
      x[std::size_t(d)] = double(f % ppc) * g.h;
      f /= ppc;
    }
    worst = std::max(worst, std::abs(tiling.value(x) - cplx(1.0)));
  }
  w.invariant = worst <= tol ? Verdict::make_witnessed({{"max_cell_error", worst}})
                             : Verdict::make_falsified({{"max_cell_error", worst}});
  w.invariant.horizon["lattice_J"] = double(J);
  return w;
}

/// S_chi(f): c_j = (f * chi)(j) by panelled Simpson over supp chi (n = 1).
inline SequenceData sample_convolution(const GridFunction& f, const AnalyticFunction& chi,
                                       int J = -1, int points_per_unit = 256) {
  const GridSpec& g = f.grid();
  if (g.n != 1) throw std::invalid_argument("sample_convolution is one-dimensional");
  if (!std::isfinite(chi.support_radius()))
    throw std::invalid_argument("sample_convolution: chi must be compactly supported");
  if (J < 0) J = g.default_J();
  if (double(J) + chi.support_radius() > g.T + 1e-9)
    throw std::invalid_argument("sample_convolution: support overflows the grid box");
  auto edges = chi.breakpoints();
  if (edges.empty()) edges = {-chi.support_radius(), chi.support_radius()};
  SequenceData c = SequenceData::zero(1, J);
  const AnalyticFunction& fp = f.provider();
  MultiIndex z = MultiIndex::zero(1);
  for (int j = -J; j <= J; ++j) {
    auto integrand = [&](double t) {
      return fp.derivative(z, {double(j) - t}) * chi.value(std::vector<double>{t});
    };
    std::vector<int> jj{j};
    c.at(jj) = nodes::simpson_panels(integrand, edges, points_per_unit);
  }
  return c;
}

/// R_psi(c) = sum_j c_j T_j psi, materialized as a closed-form translate sum.
inline GridFunction synthesis(const SequenceData& c, const Window& psi) {
  if (c.n != psi.grid.n) throw std::invalid_argument("synthesis: dimension mismatch");
  std::vector<std::pair<std::vector<double>, cplx>> terms;
  for (std::int64_t i = 0; i < std::int64_t(c.c.size()); ++i) {
    cplx v = c.c[std::size_t(i)];
    if (v == cplx(0.0)) continue;
    auto j = c.index_of(i);
    std::vector<double> shift(j.begin(), j.end());
    terms.push_back({std::move(shift), v});
  }
  if (terms.empty())
    return GridFunction::analytic(psi.grid, AnalyticFunction::zero(psi.grid.n));
  return GridFunction::analytic(psi.grid,
                                AnalyticFunction::translate_sum(psi.fn, std::move(terms)));
}

struct SynthesisBound {
  double observed = 0.0;  // ||R_psi(c)||_E
  double bound = 0.0;     // C0 * C * ||c||_{E_d} * ||psi||_{<.>^{n+1}}
  double ratio = 0.0;
  bool holds = false;
};

inline SynthesisBound synthesis_norm_check(const SequenceData& c, const Window& psi,
                                           const BanachSpaceModel& model) {
  if (!psi.decay_ok) throw std::invalid_argument("synthesis: window decay certificate missing");
  SynthesisBound out;
  GridFunction g = synthesis(c, psi);
  out.observed = norm_E(model, g.samples()).value;
  out.bound = lattice_decay_constant(psi.grid) * ed_norm(model, c).value * psi.decay_norm;
  out.ratio = out.bound > 0.0 ? out.observed / out.bound : (out.observed > 0.0 ? 1e300 : 0.0);
  out.holds = out.ratio <= 1.0 + 1e-9;
  return out;
}

/// S(f): exact lattice samples.
inline SequenceData evaluation(const GridFunction& f, int J = -1) {
  const GridSpec& g = f.grid();
  if (J < 0) J = g.default_J();
  SequenceData c = SequenceData::zero(g.n, J);
  if (f.has_derivatives()) {
    const AnalyticFunction& fp = f.provider();
    std::vector<double> x(std::size_t(g.n), 0.0);
    for (std::int64_t i = 0; i < std::int64_t(c.c.size()); ++i) {
      auto j = c.index_of(i);
      for (int d = 0; d < g.n; ++d) x[std::size_t(d)] = double(j[std::size_t(d)]);
      c.c[std::size_t(i)] = fp.value(x);
    }
    return c;
  }
  if (J > int(g.T) - 1) throw std::invalid_argument("evaluation: truncation exceeds the box");
  auto samples = f.samples();
  std::int64_t pa = g.per_axis(), ppc = g.points_per_cell_axis();
  for (std::int64_t i = 0; i < std::int64_t(c.c.size()); ++i) {
    auto j = c.index_of(i);
    std::int64_t flat = 0;
    for (int d = 0; d < g.n; ++d)
      flat = flat * pa + (std::int64_t(j[std::size_t(d)]) + std::int64_t(g.T)) * ppc;
    c.c[std::size_t(i)] = samples[std::size_t(flat)];
  }
  return c;
}

struct PeriodizeResult {
  GridFunction g;
  double tail_bound = 0.0;         // from the window-style decay certificate
  double periodicity_error = 0.0;  // sup over cell boundary samples
};

/// Pi(f) = sum_{|j|_inf <= J} T_j f, with a quantified truncation tail.
inline PeriodizeResult periodize(const GridFunction& f, int J = -1) {
  const GridSpec& gs = f.grid();
  if (J < 0) J = gs.default_J();
  AnalyticFunction p = AnalyticFunction::periodic_sum(f.provider(), J);
  PeriodizeResult out{GridFunction::analytic(gs, p), 0.0, 0.0};

  double decay = 0.0;
  for (std::int64_t i = 0; i < gs.total_points(); ++i) {
    auto x = gs.point(i);
    decay = std::max(decay,
                     std::abs(f.provider().value(x)) * std::pow(bracket(x), double(gs.n + 1)));
  }
  // |x - j| >= |j|_inf - sqrt(n) on the fundamental cell; crude lattice tail
  std::vector<double> terms;
  for (int r = J + 1; r <= 16 * J; ++r) {
    double shells = std::pow(double(2 * r + 1), gs.n) - std::pow(double(2 * r - 1), gs.n);
    terms.push_back(shells * std::pow(1.0 + sq(double(r) - std::sqrt(double(gs.n))),
                                      -0.5 * (gs.n + 1)));
  }
  out.tail_bound = decay * pairwise_sum(terms);

  // periodicity on the cell boundary: compare x and x + e_d
  std::vector<double> x(std::size_t(gs.n), 0.25);
  for (int d = 0; d < gs.n; ++d) {
    std::vector<double> y = x;
    y[std::size_t(d)] += 1.0;
    out.periodicity_error =
        std::max(out.periodicity_error, std::abs(p.value(x) - p.value(y)));
  }
  return out;
}

/// L_psi(f) = psi * f with Leibniz-form derivatives.
inline GridFunction multiply(const Window& psi, const GridFunction& f) {
  if (psi.grid.n != f.grid().n) throw std::invalid_argument("multiply: dimension mismatch");
  return GridFunction::analytic(psi.grid,
                                AnalyticFunction::product(psi.fn, f.provider()));
}

struct DecayUpgradeResult {
  AnalyticFunction g = AnalyticFunction::zero(1);
  double g0_error = 0.0;    // |g(0) - 1|
  double decay_norm = 0.0;  // sup |g(x)| <x>^{n+1} over the box
  double normalizer = 0.0;  // (f * psi)(0) before scaling
};

/// g = (f * psi) chi-hat with psi a compactly supported cutoff normalized so
/// (f * psi)(0) = 1 and chi a unit-mass piecewise-polynomial cutoff whose
/// transform ships in closed form.
inline DecayUpgradeResult decay_upgrade(const AnalyticFunction& f,
                                        const AnalyticFunction& psi, PiecewisePoly chi,
                                        GridSpec gs, int points_per_unit = 256) {
  if (f.dim() != 1 || psi.dim() != 1)
    throw std::invalid_argument("decay_upgrade is one-dimensional");
  AnalyticFunction conv = AnalyticFunction::convolution(f, psi, points_per_unit);
  cplx v0 = conv.value1(0.0);
  if (std::abs(v0) < 1e-12)
    throw std::runtime_error("decay_upgrade: (f * psi)(0) = 0, cannot normalize");
  // normalize chi to unit mass
  {
    std::vector<double> masses;
    for (std::size_t i = 0; i + 1 < chi.breaks.size(); ++i) {
      double L = chi.breaks[i + 1] - chi.breaks[i];
      double m = 0.0;
      for (std::size_t k = 0; k < chi.coef[i].size(); ++k)
        m += chi.coef[i][k] * std::pow(L, double(k + 1)) / double(k + 1);
      masses.push_back(m);
    }
    double mass = pairwise_sum(masses);
    if (std::abs(mass) < 1e-12) throw std::runtime_error("decay_upgrade: chi has zero mass");
    chi = pp_scale(chi, 1.0 / mass);
  }
  AnalyticFunction scaled = AnalyticFunction::sum({{cplx(1.0) / v0, conv}});
  AnalyticFunction chihat = AnalyticFunction::fourier_of_piecewise(std::move(chi));
  DecayUpgradeResult out;
  out.normalizer = std::abs(v0);
  out.g = AnalyticFunction::product(scaled, chihat);
  out.g0_error = std::abs(out.g.value1(0.0) - cplx(1.0));
  for (std::int64_t i = 0; i < gs.total_points(); ++i) {
    auto x = gs.point(i);
    out.decay_norm =
        std::max(out.decay_norm, std::abs(out.g.value(x)) * std::pow(bracket(x), double(gs.n + 1)));
  }
  return out;
}

/// One-dimensional parametrix of order l = 1: kernel chi F1 with
/// F1 = |x|/2 and remainder phi1 = chi'' F1 + 2 chi' F1' (supported in the
/// transition annulus, smooth there).
struct Parametrix1D {
  int deg = 8;
  PiecewisePoly chi;     // 1 on |x| <= 1/2, support [-1, 1]
  PiecewisePoly kernel;  // chi * F1, kink at 0 only
  PiecewisePoly phi;     // remainder, supported in 1/2 <= |x| <= 1

  static Parametrix1D make(int deg = 8) {
    Parametrix1D p;
    p.deg = deg;
    p.chi = bump_poly(deg, 1.0);
    PiecewisePoly F1;  // |x|/2 on [-1, 1]
    F1.breaks = {-1.0, 0.0, 1.0};
    F1.coef = {{0.5, -0.5}, {0.0, 0.5}};
    PiecewisePoly F1d;  // sign(x)/2
    F1d.breaks = {-1.0, 0.0, 1.0};
    F1d.coef = {{-0.5}, {0.5}};
    p.kernel = multiply(p.chi, F1);
    PiecewisePoly c1 = p.chi.derivative();
    PiecewisePoly c2 = c1.derivative();
    p.phi = pp_add(multiply(c2, F1), pp_scale(multiply(c1, F1d), 2.0));
    return p;
  }
};

struct ParametrixReport {
  double max_error = 0.0;
  double h = 0.0;
  int points = 0;
};

/// f = (f'' * chi F1) - (f * phi1), checked on a uniform sample of [x_lo, x_hi]
/// with panelled Simpson split at the kernel kinks; panel width tracks h.
inline ParametrixReport parametrix_reproduce(const Parametrix1D& p, const AnalyticFunction& f,
                                             double h, double x_lo = -2.0, double x_hi = 2.0) {
  if (f.dim() != 1) throw std::invalid_argument("parametrix is one-dimensional");
  int ppu = std::max(4, int(std::llround(2.0 / h)));
  const auto& ek = p.kernel.breaks;
  const auto& ep = p.phi.breaks;
  ParametrixReport rep;
  rep.h = h;
  int n_pts = int(std::llround((x_hi - x_lo) / h)) + 1;
  rep.points = n_pts;
  for (int i = 0; i < n_pts; ++i) {
    double x = x_lo + i * h;
    auto g1 = [&](double t) { return f.derivative1(2, x - t) * p.kernel.eval(t); };
    auto g2 = [&](double t) { return f.derivative1(0, x - t) * p.phi.eval(t); };
    cplx lhs = nodes::simpson_panels(g1, ek, ppu) - nodes::simpson_panels(g2, ep, ppu);
    rep.max_error = std::max(rep.max_error, std::abs(lhs - f.value1(x)));
  }
  return rep;
}

}  // namespace gsw
