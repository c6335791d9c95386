#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "grid.hpp"
#include "systems.hpp"

namespace gsw {

inline constexpr int kSaturationWindow = 6;     // K consecutive decreasing orders
inline constexpr double kTailRelTol = 1e-8;

struct SeminormResult {
  double log_value = -std::numeric_limits<double>::infinity();
  double value = 0.0;
  bool saturated = false;   // per-order maxima decreasing over the last K orders
                            // and the box tail negligible
  bool diverging = false;   // log per-order maxima growing superlinearly
  std::vector<double> per_order_log;
  std::string note;
};

/// sup_alpha ||f^(alpha) w||_E / M_alpha over |alpha| <= alpha_max.
inline SeminormResult seminorm(const GridFunction& f, const WeightSequence& M,
                               const WeightFunction& w, const BanachSpaceModel& model,
                               int alpha_max) {
  const GridSpec& g = f.grid();
  if (M.dim() != g.n || w.dim() != g.n)
    throw std::invalid_argument("seminorm: dimension mismatch");
  SeminormResult out;

  std::int64_t N = g.total_points();
  std::vector<double> wv(std::size_t(N), 0.0);
  bool w_sat = true;
  for (std::int64_t i = 0; i < N; ++i) {
    auto v = w.log_eval(g.point(i));
    w_sat = w_sat && v.saturated;
    wv[std::size_t(i)] = std::exp(v.log_w);
  }

  bool tails_ok = true;
  std::vector<cplx> buf;
  for (int q = 0; q <= alpha_max; ++q) {
    double best = -std::numeric_limits<double>::infinity();
    bool order_tail_ok = true;
    for_each_order(g.n, q, [&](const MultiIndex& a) {
      buf = f.derivative_samples(a);
      for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= wv[i];
      NormResult nr = norm_E(model, buf);
      double lg = nr.value > 0.0 ? std::log(nr.value) - M.log_value(a)
                                 : -std::numeric_limits<double>::infinity();
      if (lg > best) {
        best = lg;
        order_tail_ok = nr.tail_ok;
      }
    });
    out.per_order_log.push_back(best);
    if (q > alpha_max - kSaturationWindow) tails_ok = tails_ok && order_tail_ok;
    if (best > out.log_value) out.log_value = best;
  }
  out.value = std::exp(out.log_value);

  // trend over the last K orders; divergence is judged on lag-2 steps so the
  // even/odd parity oscillation of derivative families cannot mask growth
  bool decreasing = alpha_max >= kSaturationWindow;
  bool superlinear = alpha_max >= kSaturationWindow + 1;
  double prev_step = -std::numeric_limits<double>::infinity();
  for (int q = alpha_max - kSaturationWindow + 1; q <= alpha_max && q >= 1; ++q) {
    double a = out.per_order_log[std::size_t(q - 1)], b = out.per_order_log[std::size_t(q)];
    if (std::isinf(a) && std::isinf(b)) continue;  // identically-zero tail
    if (b - a > 1e-9) decreasing = false;
  }
  for (int q = alpha_max - kSaturationWindow + 1; q <= alpha_max && q >= 2; ++q) {
    double a = out.per_order_log[std::size_t(q - 2)], b = out.per_order_log[std::size_t(q)];
    if (std::isinf(a) && std::isinf(b)) continue;
    double step = b - a;
    if (!(step > 0.0 && step >= prev_step - 1e-9)) superlinear = false;
    prev_step = step;
  }
  out.saturated = decreasing && tails_ok && w_sat;
  out.diverging = superlinear && !decreasing;
  if (!w_sat) out.note = "weight evaluation hit the associated-function horizon";
  else if (!tails_ok) out.note = "box tail above tolerance";
  return out;
}

/// Membership of f in the space cut out by paired members of M and W.
/// Roumieu: some lambda yields a saturated finite seminorm; Beurling: all do.
inline Verdict membership_verdict(const GridFunction& f, const WeightSequenceSystem& M,
                                  const WeightFunctionSystem& W, Kind kind,
                                  const BanachSpaceModel& model, const Horizons& hz = {},
                                  int alpha_max = 24) {
  if (M.size() != W.size())
    throw std::invalid_argument("membership: systems must share the lambda-grid");
  alpha_max = std::min(alpha_max, hz.q_max);
  std::size_t n = M.size();
  auto order = detail::candidate_order(n, kind);  // Roumieu largest lambda first

  auto judge = [&](std::size_t i) { return seminorm(f, M.member(i), W.member(i), model, alpha_max); };

  if (kind == Kind::Roumieu) {
    bool all_diverge = true;
    for (std::size_t i : order) {
      SeminormResult r = judge(i);
      if (r.saturated) {
        Verdict v = Verdict::make_witnessed({{"lambda", M.lambda(i)}, {"seminorm", r.value}});
        v.horizon["alpha_max"] = double(alpha_max);
        return v;
      }
      if (!r.diverging) all_diverge = false;
    }
    if (all_diverge) {
      Verdict v = Verdict::make_falsified({{"lambda", M.lambda(order.back())}});
      v.note = "seminorm grows without saturation for every lambda (horizon-relative)";
      v.horizon["alpha_max"] = double(alpha_max);
      return v;
    }
    Verdict v = Verdict::make_inconclusive("no lambda saturates at this horizon");
    v.horizon["alpha_max"] = double(alpha_max);
    return v;
  }
  double worst = 0.0, worst_l = 0.0;
  for (std::size_t i : order) {
    SeminormResult r = judge(i);
    if (r.diverging) {
      Verdict v = Verdict::make_falsified({{"lambda", M.lambda(i)}});
      v.note = "seminorm grows without saturation (horizon-relative)";
      v.horizon["alpha_max"] = double(alpha_max);
      return v;
    }
    if (!r.saturated) {
      Verdict v = Verdict::make_inconclusive("lambda=" + std::to_string(M.lambda(i)) +
                                             " does not saturate at this horizon");
      v.horizon["alpha_max"] = double(alpha_max);
      return v;
    }
    if (r.value > worst) {
      worst = r.value;
      worst_l = M.lambda(i);
    }
  }
  Verdict v = Verdict::make_witnessed({{"lambda", worst_l}, {"seminorm", worst}});
  v.horizon["alpha_max"] = double(alpha_max);
  return v;
}

/// sup_alpha ||f^(alpha) 1_{[0,1)^n}||_E / M_alpha for a periodic f with exact
/// derivatives, restricted to the fundamental cell of the model grid.
inline SeminormResult periodic_seminorm(const AnalyticFunction& f, const WeightSequence& M,
                                        const BanachSpaceModel& model, int alpha_max = 16) {
  const GridSpec& g = model.grid;
  if (f.dim() != g.n || M.dim() != g.n)
    throw std::invalid_argument("periodic seminorm: dimension mismatch");
  std::int64_t ppc = g.points_per_cell_axis();
  std::int64_t N = 1;
  for (int d = 0; d < g.n; ++d) N *= ppc;
  auto cell_point = [&](std::int64_t flat) {
    std::vector<double> x(std::size_t(g.n), 0.0);
    for (int d = g.n - 1; d >= 0; --d) {
      x[std::size_t(d)] = double(flat % ppc) * g.h;
      flat /= ppc;
    }
    return x;
  };
  auto cell_norm = [&](const std::vector<double>& mags) {
    double p = model.kind == BanachSpaceModel::Kind::Lp
                   ? model.p
                   : std::numeric_limits<double>::infinity();
    if (model.kind == BanachSpaceModel::Kind::MixedLp) {
      std::vector<double> rows(std::size_t(ppc), 0.0);
      for (std::int64_t r = 0; r < ppc; ++r)
        rows[std::size_t(r)] = detail::lp_reduce(
            std::span<const double>(mags).subspan(std::size_t(r * ppc), std::size_t(ppc)),
            model.p2, g.h);
      return detail::lp_reduce(rows, model.p1, g.h);
    }
    return detail::lp_reduce(mags, p, std::pow(g.h, g.n));
  };

  SeminormResult out;
  std::vector<double> mags(std::size_t(N), 0.0);
  for (int q = 0; q <= alpha_max; ++q) {
    double best = -std::numeric_limits<double>::infinity();
    for_each_order(g.n, q, [&](const MultiIndex& a) {
      for (std::int64_t i = 0; i < N; ++i)
        mags[std::size_t(i)] = std::abs(f.derivative(a, cell_point(i)));
      double nv = cell_norm(mags);
      double lg = nv > 0.0 ? std::log(nv) - M.log_value(a)
                           : -std::numeric_limits<double>::infinity();
      best = std::max(best, lg);
    });
    out.per_order_log.push_back(best);
    if (best > out.log_value) out.log_value = best;
  }
  out.value = std::exp(out.log_value);
  bool decreasing = alpha_max >= kSaturationWindow;
  for (int q = alpha_max - kSaturationWindow + 1; q <= alpha_max && q >= 1; ++q)
    if (out.per_order_log[std::size_t(q)] > out.per_order_log[std::size_t(q - 1)] + 1e-9)
      decreasing = false;
  out.saturated = decreasing;
  return out;
}

struct ProbeReport {
  Verdict probe;    // verdict induced by the proof's test elements
  Verdict direct;   // system_relation verdict for the same pair
  bool consistent = true;
  std::string note;
};

namespace detail {

inline bool statuses_compatible(const Verdict& a, const Verdict& b) {
  if (a.status == Status::Inconclusive || b.status == Status::Inconclusive) return true;
  return a.status == b.status;
}

}  // namespace detail

/// Delta-sequence probe for W [subseteq] V: inclusion of the weighted E_d
/// spaces forces v^lambda(k) <= C w^mu(k) at lattice points, tested as a trend
/// over lattice shells |k|_inf = 0..J.
inline ProbeReport probe_delta_sequences(const WeightFunctionSystem& W,
                                         const WeightFunctionSystem& V, Kind kind,
                                         const BanachSpaceModel& model,
                                         const Horizons& hz = {}) {
  if (W.dim() != V.dim()) throw std::invalid_argument("dimension mismatch");
  int n = W.dim();
  int J = model.grid.default_J();
  auto dirs = detail::unit_directions(n);

  auto shell_ratios = [&](const WeightFunction& vf, const WeightFunction& wf) {
    std::vector<double> r;
    for (int k = 0; k <= J; ++k) {
      double sup = -std::numeric_limits<double>::infinity();
      bool sat = true;
      for (const auto& d : dirs) {
        std::vector<double> x(std::size_t(n), 0.0);
        for (int i = 0; i < n; ++i) x[std::size_t(i)] = double(k) * d[std::size_t(i)];
        auto lv = vf.log_eval(x);
        auto lw = wf.log_eval(x);
        sat = sat && lv.saturated && lw.saturated;
        sup = std::max(sup, lv.log_w - lw.log_w);
      }
      if (!sat) break;
      r.push_back(sup);
      if (k == 0) continue;
    }
    return r;
  };

  const auto& targets = kind == Kind::Beurling ? V : W;
  const auto& cands = kind == Kind::Beurling ? W : V;
  auto order = detail::candidate_order(cands.size(), kind);  // user grid only
  const char* tkey = kind == Kind::Beurling ? "lambda" : "mu";
  const char* ckey = kind == Kind::Beurling ? "mu" : "lambda";
  ProbeReport rep;
  rep.probe = detail::forall_exists(
      targets.size(), order,
      [&](std::size_t t, std::size_t c) {
        const WeightFunction& vf = kind == Kind::Beurling ? V.member(t) : V.member(c);
        const WeightFunction& wf = kind == Kind::Beurling ? W.member(c) : W.member(t);
        auto r = shell_ratios(vf, wf);
        Verdict v = classify_log_ratio_trend(r, hz, "C");
        v.horizon["lattice_J"] = double(J);
        return v;
      },
      tkey, ckey, targets.lambdas(), cands.lambdas());
  rep.probe.horizon["lattice_J"] = double(J);
  rep.direct = system_relation_functions(W, V, kind, hz);
  rep.consistent = detail::statuses_compatible(rep.probe, rep.direct);
  rep.note = "delta-sequence lattice probe vs direct weight comparison";
  return rep;
}

/// Character probe for M [subseteq] N: periodic-space inclusion forces
/// exp omega_{N^lambda}(2 pi k) <= C exp omega_{M^mu}(2 pi k), tested on
/// doubling frequencies; sufficiency in the log-convex case gives the verdict
/// teeth in both directions.
inline ProbeReport probe_characters(const WeightSequenceSystem& M,
                                    const WeightSequenceSystem& N, Kind kind,
                                    const BanachSpaceModel& model, const Horizons& hz = {}) {
  if (M.dim() != N.dim()) throw std::invalid_argument("dimension mismatch");
  (void)model;  // character probes are grid-free; the model fixes only ||1||_E
  int probes = 14;

  auto freq_ratios = [&](const WeightSequence& Nm, const WeightSequence& Mm) {
    std::vector<double> r;
    double k = 1.0;
    for (int i = 0; i < probes; ++i, k *= 2.0) {
      std::int64_t cap = std::int64_t(1) << 40;
      auto an = associated_function(Nm, 2.0 * kPi * k, cap);
      auto am = associated_function(Mm, 2.0 * kPi * k, cap);
      if (!an.saturated || !am.saturated) break;
      r.push_back(an.value - am.value);
    }
    return r;
  };

  const auto& targets = kind == Kind::Beurling ? N : M;
  const auto& cands = kind == Kind::Beurling ? M : N;
  auto order = detail::candidate_order(cands.size(), kind);  // user grid only
  const char* tkey = kind == Kind::Beurling ? "lambda" : "mu";
  const char* ckey = kind == Kind::Beurling ? "mu" : "lambda";
  ProbeReport rep;
  rep.probe = detail::forall_exists(
      targets.size(), order,
      [&](std::size_t t, std::size_t c) {
        const WeightSequence& Nm = kind == Kind::Beurling ? N.member(t) : N.member(c);
        const WeightSequence& Mm = kind == Kind::Beurling ? M.member(c) : M.member(t);
        auto r = freq_ratios(Nm, Mm);
        Verdict v = classify_log_ratio_trend(r, hz, "C");
        v.horizon["k_max"] = std::ldexp(1.0, probes - 1);
        return v;
      },
      tkey, ckey, targets.lambdas(), cands.lambdas());
  rep.probe.horizon["k_max"] = std::ldexp(1.0, probes - 1);
  bool lc = system_log_convex(M) && system_log_convex(N);
  rep.probe.note = lc ? "character probe; log-convex members make it two-sided"
                      : "character probe (necessary direction only)";
  rep.direct = system_relation_sequences(M, N, kind, hz);
  rep.consistent = detail::statuses_compatible(rep.probe, rep.direct);
  rep.note = "character frequency probe vs direct sequence comparison";
  return rep;
}

struct EmbeddingReport {
  double constant = 0.0;     // C0 * (n+1)^{(n+1)/2} * sum_j <j>^{-(n+1)}
  double worst_ratio = 0.0;  // ||f <.>^{-(n+1)}||_L1 / (constant ||f||_E)
  bool holds = false;
  int samples = 0;
};

/// ||f <.>^{-(n+1)}||_{L1} <= C ||f||_E on random finitely supported grid
/// functions, with the lattice-truncated constant.
inline EmbeddingReport weighted_L1_embedding_check(const BanachSpaceModel& model,
                                                   int n_samples = 64,
                                                   unsigned seed = 20260824) {
  const GridSpec& g = model.grid;
  std::int64_t N = g.total_points();
  double csum = 0.0;
  {
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
    csum = pairwise_sum(terms);
  }
  EmbeddingReport rep;
  rep.constant = std::pow(double(g.n + 1), 0.5 * (g.n + 1)) * csum;
  rep.samples = n_samples;

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::bernoulli_distribution sign(0.5);
  std::vector<cplx> f(std::size_t(N), cplx(0.0));
  std::vector<double> l1(std::size_t(N), 0.0);
  for (int s = 0; s < n_samples; ++s) {
    for (std::int64_t i = 0; i < N; ++i)
      f[std::size_t(i)] = (s % 2) ? cplx(sign(rng) ? 1.0 : -1.0) : cplx(unif(rng), unif(rng));
    NormResult ne = norm_E(model, f);
    for (std::int64_t i = 0; i < N; ++i)
      l1[std::size_t(i)] =
          std::abs(f[std::size_t(i)]) * std::pow(bracket(g.point(i)), -double(g.n + 1));
    double L1 = std::pow(g.h, g.n) * pairwise_sum(l1);
    double ratio = L1 / (rep.constant * ne.value);
    rep.worst_ratio = std::max(rep.worst_ratio, ratio);
  }
  rep.holds = rep.worst_ratio <= 1.0 + 1e-12;
  return rep;
}

struct MultiplierReport {
  Verdict weighted_side;    // membership with weight <.>^{2k} w
  Verdict multiplied_side;  // membership of f P over the monomial basis of P_{2k}
  bool agree = true;
  std::string note;
};

/// Desk-scale equivalence of "membership with polynomially shifted weight" and
/// "membership of f P for every P in the monomial basis of P_{2k}".
inline MultiplierReport polynomial_multiplier_check(const GridFunction& f,
                                                    const WeightSequenceSystem& M,
                                                    const WeightFunctionSystem& W, Kind kind,
                                                    int k, const BanachSpaceModel& model,
                                                    const Horizons& hz = {},
                                                    int alpha_max = 20) {
  MultiplierReport rep;
  WeightFunctionSystem shifted = WeightFunctionSystem::poly_shift_all(2.0 * k, W);
  rep.weighted_side = membership_verdict(f, M, shifted, kind, model, hz, alpha_max);

  const GridSpec& g = f.grid();
  double R = g.T + 2.0;
  bool any_fals = false, any_incl = false;
  Verdict worst = Verdict::make_witnessed({{"C", 0.0}});
  for (const MultiIndex& b : simplex(g.n, 2 * k)) {
    std::vector<AnalyticFunction> axes;
    for (int d = 0; d < g.n; ++d) axes.push_back(monomial_on_box(b[d], R));
    AnalyticFunction P = g.n == 1 ? axes[0] : AnalyticFunction::tensor(std::move(axes));
    GridFunction fp = GridFunction::analytic(g, AnalyticFunction::product(f.provider(), P));
    Verdict v = membership_verdict(fp, M, W, kind, model, hz, alpha_max);
    if (v.falsified()) {
      any_fals = true;
      worst = v;
      worst.counterexample["monomial_order"] = double(b.order());
      break;
    }
    if (!v.witnessed()) any_incl = true;
  }
  if (any_fals)
    rep.multiplied_side = worst;
  else if (any_incl)
    rep.multiplied_side = Verdict::make_inconclusive("a monomial direction did not settle");
  else
    rep.multiplied_side = Verdict::make_witnessed({{"k", double(k)}});
  rep.agree = detail::statuses_compatible(rep.weighted_side, rep.multiplied_side);
  rep.note = "polynomial multiplier equivalence at horizon";
  return rep;
}

}  // namespace gsw
