#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <variant>
#include <vector>

#include "numerics.hpp"
#include "verdict.hpp"

namespace gsw {

/// Braun-Meise-Taylor style weight generator: non-decreasing, continuous,
/// vanishing on [0,1]. phi(x) = omega(e^x) is the object the conjugate
/// machinery works on.
class BmtWeight {
 public:
  struct PowerMinusOne { double rho; };           // max(0, t^rho - 1)
  struct LogPower { double a; };                  // max(0, (log t)^a), a >= 1
  struct SampledPhi {                             // phi on a uniform x-grid
    double x_max;
    std::vector<double> phi;                      // phi[k] = phi(k * x_max/(N-1))
  };
  using Spec = std::variant<PowerMinusOne, LogPower, SampledPhi>;

  explicit BmtWeight(Spec s) : spec_(std::move(s)) { validate(); }

  static BmtWeight power_minus_one(double rho) { return BmtWeight(PowerMinusOne{rho}); }
  static BmtWeight log_power(double a) { return BmtWeight(LogPower{a}); }
  static BmtWeight sampled_phi(double x_max, std::vector<double> phi) {
    return BmtWeight(SampledPhi{x_max, std::move(phi)});
  }

  const Spec& spec() const { return spec_; }

  double omega(double t) const {
    if (t <= 1.0) return 0.0;
    return phi(std::log(t));
  }

  double phi(double x) const {
    if (x <= 0.0) return 0.0;
    if (auto* p = std::get_if<PowerMinusOne>(&spec_))
      return std::max(0.0, std::exp(p->rho * x) - 1.0);
    if (auto* p = std::get_if<LogPower>(&spec_)) return std::pow(x, p->a);
    const auto& s = std::get<SampledPhi>(spec_);
    std::size_t n = s.phi.size();
    double dx = s.x_max / double(n - 1);
    if (x >= s.x_max) {  // extend with the last chord slope
      double slope = (s.phi[n - 1] - s.phi[n - 2]) / dx;
      return s.phi[n - 1] + slope * (x - s.x_max);
    }
    double u = x / dx;
    std::size_t k = std::min(n - 2, static_cast<std::size_t>(u));
    double t = u - double(k);
    return s.phi[k] + t * (s.phi[k + 1] - s.phi[k]);
  }

  bool is_sampled() const { return std::holds_alternative<SampledPhi>(spec_); }

 private:
  void validate() const {
    if (auto* p = std::get_if<PowerMinusOne>(&spec_)) {
      if (p->rho <= 0) throw std::invalid_argument("bmt pow: rho must be positive");
      return;
    }
    if (auto* p = std::get_if<LogPower>(&spec_)) {
      if (p->a < 1) throw std::invalid_argument("bmt logpow: a must be >= 1");
      return;
    }
    const auto& s = std::get<SampledPhi>(spec_);
    if (s.phi.size() < 3) throw std::invalid_argument("bmt phi-table: need >= 3 samples");
    if (s.x_max <= 0) throw std::invalid_argument("bmt phi-table: x_max must be positive");
    if (std::abs(s.phi.front()) > 1e-12)
      throw std::invalid_argument("bmt phi-table: phi(0) must be 0");
    for (std::size_t i = 1; i < s.phi.size(); ++i)
      if (s.phi[i] < s.phi[i - 1] - 1e-12)
        throw std::invalid_argument("bmt phi-table: phi must be non-decreasing");
    for (std::size_t i = 1; i + 1 < s.phi.size(); ++i)
      if (s.phi[i + 1] - 2 * s.phi[i] + s.phi[i - 1] < -1e-9 * (1.0 + std::abs(s.phi[i])))
        throw std::invalid_argument("bmt phi-table: phi must be convex");
  }

  Spec spec_;
};

/// Young conjugate phi*(y) = sup_{x>=0} (yx - phi(x)), computed from uniform
/// phi samples. Convexity of phi makes the per-query objective concave, so the
/// argmax moves monotonically in y and a ternary scan plus a local parabolic
/// refinement suffices.
class ConjugateTable {
 public:
  struct Value {
    double value = 0.0;
    bool covered = true;  // false iff y exceeds the attainable slope range
  };

  ConjugateTable(const BmtWeight& w, double y_max, std::size_t samples = 4096)
      : y_max_(y_max) {
    // grow x_max until the end slope covers y_max (phi convex => end slope is max)
    double x_max = 1.0;
    double dx = x_max / double(samples - 1);
    auto end_slope = [&](double xm, double d) {
      return (w.phi(xm) - w.phi(xm - d)) / d;
    };
    for (int it = 0; it < 80; ++it) {
      dx = x_max / double(samples - 1);
      if (end_slope(x_max, dx) >= 1.05 * y_max + 1.0) break;
      x_max *= 2.0;
      if (x_max > 1e9) break;  // slope range genuinely not attainable
    }
    x_.resize(samples);
    phi_.resize(samples);
    for (std::size_t k = 0; k < samples; ++k) {
      x_[k] = double(k) * dx;
      phi_[k] = w.phi(x_[k]);
    }
    slope_max_ = (phi_[samples - 1] - phi_[samples - 2]) / dx;
  }

  /// Conjugate from arbitrary convex samples (test hook and phi-table path).
  ConjugateTable(std::vector<double> x, std::vector<double> phi)
      : x_(std::move(x)), phi_(std::move(phi)) {
    std::size_t n = x_.size();
    slope_max_ = (phi_[n - 1] - phi_[n - 2]) / (x_[n - 1] - x_[n - 2]);
    y_max_ = slope_max_;
  }

  Value conj(double y) const {
    std::size_t n = x_.size();
    auto g = [&](std::int64_t i) { return y * x_[std::size_t(i)] - phi_[std::size_t(i)]; };
    auto [i, gi] = argmax_concave_int(g, 0, std::int64_t(n) - 1);
    Value out;
    if (i == std::int64_t(n) - 1 && y > slope_max_) {
      out.covered = false;
      out.value = gi;
      return out;
    }
    out.value = std::max(0.0, gi);
    if (i > 0 && i < std::int64_t(n) - 1) {
      auto [xv, gv] = parabola_peak(x_[i - 1], g(i - 1), x_[i], gi, x_[i + 1], g(i + 1));
      (void)xv;
      out.value = std::max(out.value, gv);
    }
    return out;
  }

  double slope_max() const { return slope_max_; }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& phi() const { return phi_; }

  /// Biconjugate phi**(x) = sup_y (xy - phi*(y)) over a y-grid covering the
  /// slope range, again with parabolic refinement.
  double biconj(double x, std::size_t y_samples = 4096) const {
    double y_hi = slope_max_;
    double dy = y_hi / double(y_samples - 1);
    auto ys = [&](std::int64_t k) { return dy * double(k); };
    auto g = [&](std::int64_t k) { return x * ys(k) - conj(ys(k)).value; };
    auto [best, v] = argmax_concave_int(g, 0, std::int64_t(y_samples) - 1);
    if (best > 0 && best + 1 < std::int64_t(y_samples)) {
      auto [yv, gv] = parabola_peak(ys(best - 1), g(best - 1), ys(best), v, ys(best + 1),
                                    g(best + 1));
      (void)yv;
      v = std::max(v, gv);
    }
    return std::max(0.0, v);
  }

 private:
  std::vector<double> x_, phi_;
  double slope_max_ = 0.0;
  double y_max_ = 0.0;
};

/// Exported two-column form of the conjugate on a geometric y-grid.
struct ConjugateExport {
  std::vector<double> y;
  std::vector<double> phistar;
  std::vector<bool> covered;
};

inline ConjugateExport export_conjugate(const ConjugateTable& tab, double y_lo, double y_hi,
                                        int points_per_decade = 16) {
  ConjugateExport out;
  for (double y : geometric_grid(y_lo, y_hi, points_per_decade)) {
    auto v = tab.conj(y);
    out.y.push_back(y);
    out.phistar.push_back(v.value);
    out.covered.push_back(v.covered);
  }
  return out;
}

struct BmtConditionReport {
  Verdict alpha;  // omega(2t) = O(omega(t))
  Verdict gamma;  // log t = o(omega(t))
  Verdict delta;  // phi convex
};

/// Checks (alpha), (gamma), (delta) for a BMT generator on [1, T].
inline BmtConditionReport check_bmt_conditions(const BmtWeight& w, double T = 1e8,
                                               const Horizons& hz = {},
                                               int points_per_decade = 64,
                                               double gamma_threshold = 10.0) {
  BmtConditionReport rep;
  int window = 2 * points_per_decade;  // two decades of tail trend

  // symbolic fast paths for the canonical families
  if (auto* p = std::get_if<BmtWeight::PowerMinusOne>(&w.spec())) {
    rep.alpha = Verdict::make_witnessed({{"bound", std::pow(2.0, p->rho)}});
    rep.alpha.note = "fast path: power family";
    rep.gamma = Verdict::make_witnessed({{"rho", p->rho}});
    rep.gamma.note = "fast path: t^rho beats log t";
  } else if (auto* p = std::get_if<BmtWeight::LogPower>(&w.spec())) {
    rep.alpha = Verdict::make_witnessed({{"bound", 1.0}});
    rep.alpha.note = "fast path: log-power family, ratio -> 1";
    if (p->a > 1.0) {
      rep.gamma = Verdict::make_witnessed({{"a", p->a}});
      rep.gamma.note = "fast path: (log t)^a / log t = (log t)^{a-1} -> inf";
    } else {
      rep.gamma = Verdict::make_falsified({{"a", p->a}});
      rep.gamma.note = "fast path: ratio identically 1";
    }
  } else {
    // (alpha) numeric: ratio omega(2t)/omega(t) over a geometric grid
    std::vector<double> logr;
    for (double t : geometric_grid(2.0, T / 2.0, points_per_decade)) {
      double wt = w.omega(t);
      if (wt <= 1e-300) continue;
      logr.push_back(std::log(w.omega(2.0 * t) / wt));
    }
    Horizons ahz = hz;
    ahz.trend_window = window;
    rep.alpha = classify_log_ratio_trend(logr, ahz, "bound");

    // (gamma) numeric: omega(t)/log t must diverge through the threshold
    std::vector<double> g;
    for (double t : geometric_grid(std::exp(1.0), T, points_per_decade))
      g.push_back(w.omega(t) / std::log(t));
    bool rising = true;
    for (std::size_t i = g.size() - std::size_t(window); i < g.size(); ++i)
      if (g[i] < g[i - 1] - hz.trend_eps) rising = false;
    if (rising && g.back() >= gamma_threshold) {
      rep.gamma = Verdict::make_witnessed({{"ratio_at_T", g.back()}});
    } else if (!rising) {
      rep.gamma = Verdict::make_inconclusive("omega/log t not monotone at horizon");
    } else {
      rep.gamma = Verdict::make_inconclusive("omega/log t below threshold at horizon");
    }
    rep.gamma.horizon["T"] = T;
  }
  rep.alpha.horizon["T"] = T;

  // (delta): discrete convexity of phi, exact on the sample grid
  std::vector<double> xs, ps;
  if (auto* s = std::get_if<BmtWeight::SampledPhi>(&w.spec())) {
    double dx = s->x_max / double(s->phi.size() - 1);
    for (std::size_t k = 0; k < s->phi.size(); ++k) {
      xs.push_back(double(k) * dx);
      ps.push_back(s->phi[k]);
    }
  } else {
    double x_max = 32.0;
    std::size_t n = 1024;
    for (std::size_t k = 0; k < n; ++k) {
      xs.push_back(x_max * double(k) / double(n - 1));
      ps.push_back(w.phi(xs.back()));
    }
  }
  rep.delta = Verdict::make_witnessed();
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    double d2 = ps[i + 1] - 2 * ps[i] + ps[i - 1];
    if (d2 < -1e-9 * (1.0 + std::abs(ps[i]))) {
      rep.delta = Verdict::make_falsified({{"x", xs[i]}, {"second_difference", d2}});
      break;
    }
  }
  rep.delta.horizon["x_max"] = xs.back();
  return rep;
}

/// Non-decreasing continuous comparison weight. Theorem-level comparisons pair
/// a BMT generator with one of these; a plain power t^rho is allowed here even
/// though it is not a BMT weight.
class ScalarWeight {
 public:
  struct PurePower { double rho; };  // t^rho
  using Spec = std::variant<BmtWeight, PurePower>;

  ScalarWeight(BmtWeight w) : spec_(std::move(w)) {}
  explicit ScalarWeight(PurePower p) : spec_(p) {}
  static ScalarWeight pure_power(double rho) { return ScalarWeight(PurePower{rho}); }

  double eval(double t) const {
    if (auto* p = std::get_if<PurePower>(&spec_)) return std::pow(std::max(t, 0.0), p->rho);
    return std::get<BmtWeight>(spec_).omega(t);
  }

  /// (class, exponent): class 0 = power-like, class 1 = log-power, class -1 = unknown
  std::pair<int, double> growth_class() const {
    if (auto* p = std::get_if<PurePower>(&spec_)) return {0, p->rho};
    const auto& w = std::get<BmtWeight>(spec_);
    if (auto* q = std::get_if<BmtWeight::PowerMinusOne>(&w.spec())) return {0, q->rho};
    if (auto* q = std::get_if<BmtWeight::LogPower>(&w.spec())) return {1, q->a};
    return {-1, 0.0};
  }

  const Spec& spec() const { return spec_; }

 private:
  Spec spec_;
};

/// Decides sigma(t) = O(omega(t)) at horizon T. Symbolic fast paths cover the
/// power and log-power families; everything else is a tail-trend check on the
/// ratio over a geometric grid.
inline Verdict compare_weight_functions(const ScalarWeight& omega, const ScalarWeight& sigma,
                                        double T = 1e8, const Horizons& hz = {},
                                        int points_per_decade = 64) {
  auto [co, eo] = omega.growth_class();
  auto [cs, es] = sigma.growth_class();
  if (co >= 0 && cs >= 0) {
    bool ok;
    if (cs == co)
      ok = es <= eo;
    else
      ok = cs > co;  // class 1 (log-power) is dominated by class 0 (power)
    Verdict v = ok ? Verdict::make_witnessed() : Verdict::make_falsified();
    v.note = "fast path: exponent comparison";
    if (ok) {
      // numeric tail bound so the certificate carries a concrete constant
      double bound = 0.0;
      for (double t : geometric_grid(T / 100.0, T, points_per_decade)) {
        double wo = omega.eval(t);
        if (wo > 1e-300) bound = std::max(bound, sigma.eval(t) / wo);
      }
      v.witness["bound"] = bound;
    } else {
      double t = T;
      v.counterexample = {{"t", t}, {"ratio", sigma.eval(t) / std::max(omega.eval(t), 1e-300)}};
    }
    v.horizon["T"] = T;
    return v;
  }
  std::vector<double> logr;
  for (double t : geometric_grid(2.0, T, points_per_decade)) {
    double wo = omega.eval(t);
    if (wo <= 1e-300) continue;
    logr.push_back(std::log(std::max(sigma.eval(t), 1e-300) / wo));
  }
  Horizons thz = hz;
  thz.trend_window = 2 * points_per_decade;
  Verdict v = classify_log_ratio_trend(logr, thz, "bound");
  v.horizon["T"] = T;
  return v;
}

}  // namespace gsw
