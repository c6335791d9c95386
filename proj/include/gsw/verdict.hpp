#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gsw {

enum class Status { Witnessed, Falsified, Inconclusive };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Witnessed: return "Witnessed";
    case Status::Falsified: return "Falsified";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// Finite-horizon outcome of a quantified condition or growth relation.
///
/// Witnessed carries the constants that make the probed inequalities hold
/// (e.g. C, H, the chosen lambda/mu), Falsified carries a concrete point of
/// failure, Inconclusive carries neither. The horizon record documents the
/// finite grids on which the verdict was reached.
struct Verdict {
  Status status = Status::Inconclusive;
  std::map<std::string, double> witness;        // constants and parameters
  std::map<std::string, double> counterexample; // failing input, when Falsified
  std::map<std::string, double> horizon;        // search bounds used
  std::string note;

  bool witnessed() const { return status == Status::Witnessed; }
  bool falsified() const { return status == Status::Falsified; }

  static Verdict make_witnessed(std::map<std::string, double> w = {}) {
    Verdict v;
    v.status = Status::Witnessed;
    v.witness = std::move(w);
    return v;
  }
  static Verdict make_falsified(std::map<std::string, double> cex = {}) {
    Verdict v;
    v.status = Status::Falsified;
    v.counterexample = std::move(cex);
    return v;
  }
  static Verdict make_inconclusive(std::string note = {}) {
    Verdict v;
    v.note = std::move(note);
    return v;
  }
};

/// Shared knobs for the finite-horizon checks. All asymptotic statements are
/// certified as trends over the last `trend_window` probes.
struct Horizons {
  int q_max = 64;          // order bound for sequence sweeps
  int trend_window = 8;    // K consecutive probes for trend certificates
  double tol = 1e-6;       // relative tolerance
  double trend_eps = 1e-9; // slack when requiring "non-increasing"
  double diverge_margin = 0.05;  // min per-step growth for a divergence certificate
  int pair_order_max = 32;       // |alpha|,|beta| bound in two-index conditions (n=1)
};

/// Classifies a sequence of log-ratios r_q (indexed by order) as bounded
/// (tail non-increasing), diverging (growth above the margin over the whole
/// trend window), or neither.
inline Verdict classify_log_ratio_trend(const std::vector<double>& r, const Horizons& hz,
                                        const std::string& value_key = "C") {
  if (r.size() < static_cast<std::size_t>(hz.trend_window) + 1)
    return Verdict::make_inconclusive("trend window exceeds horizon");
  std::size_t n = r.size();
  std::size_t k = static_cast<std::size_t>(hz.trend_window);
  bool nonincreasing = true, diverging = true;
  for (std::size_t i = n - k; i < n; ++i) {
    double step = r[i] - r[i - 1];
    if (step > hz.trend_eps) nonincreasing = false;
    if (step < hz.diverge_margin) diverging = false;
  }
  if (nonincreasing) {
    double m = r[0];
    std::size_t arg = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (r[i] > m) { m = r[i]; arg = i; }
    Verdict v = Verdict::make_witnessed({{value_key, std::exp(m)}, {"arg_order", double(arg)}});
    v.horizon["orders"] = double(n - 1);
    return v;
  }
  if (diverging) {
    Verdict v = Verdict::make_falsified({{"order", double(n - 1)}, {"log_ratio", r.back()}});
    v.horizon["orders"] = double(n - 1);
    v.note = "divergence certificate (horizon-relative)";
    return v;
  }
  Verdict v = Verdict::make_inconclusive("no stable trend at horizon");
  v.horizon["orders"] = double(n - 1);
  return v;
}

}  // namespace gsw
