#pragma once

#include <cmath>
#include <memory>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "bmt.hpp"
#include "numerics.hpp"
#include "sequences.hpp"

namespace gsw {

struct WeightValue {
  double log_w = 0.0;
  bool saturated = true;  // false iff an associated-function sup hit its horizon
};

/// Continuous weight w >= 1 on R^n.
class WeightFunction {
 public:
  struct One {};
  struct PowerExp { double a, b; };              // exp(a |x|^b)
  struct FromOmega {                             // exp(omega(|x|) / lambda)
    ScalarWeight omega;
    double lambda;
  };
  struct PolyShift {                             // <x>^k * base(x)
    double k;
    std::shared_ptr<WeightFunction> base;
  };
  struct AssocDilate {                           // exp omega_M(x / lambda)
    WeightSequence M;
    double lambda;
    std::int64_t q_cap;
  };
  struct Product { std::vector<WeightFunction> parts; };
  using Spec = std::variant<One, PowerExp, FromOmega, PolyShift, AssocDilate, Product>;

  WeightFunction(int dim, Spec spec) : dim_(dim), spec_(std::move(spec)) {
    if (dim_ < 1) throw std::invalid_argument("dimension must be >= 1");
  }

  static WeightFunction one(int dim = 1) { return WeightFunction(dim, One{}); }
  static WeightFunction power_exp(double a, double b, int dim = 1) {
    if (a < 0 || b <= 0) throw std::invalid_argument("power_exp: need a >= 0, b > 0");
    return WeightFunction(dim, PowerExp{a, b});
  }
  static WeightFunction from_omega(ScalarWeight omega, double lambda, int dim = 1) {
    if (lambda <= 0) throw std::invalid_argument("from_omega: lambda must be positive");
    return WeightFunction(dim, FromOmega{std::move(omega), lambda});
  }
  static WeightFunction poly_shift(double k, WeightFunction base) {
    int d = base.dim();
    return WeightFunction(d, PolyShift{k, std::make_shared<WeightFunction>(std::move(base))});
  }
  static WeightFunction assoc_dilate(WeightSequence M, double lambda,
                                     std::int64_t q_cap = std::int64_t(1) << 40) {
    if (lambda <= 0) throw std::invalid_argument("assoc_dilate: lambda must be positive");
    int d = M.dim();
    return WeightFunction(d, AssocDilate{std::move(M), lambda, q_cap});
  }
  static WeightFunction product(std::vector<WeightFunction> parts) {
    int d = parts.at(0).dim();
    for (auto& p : parts)
      if (p.dim() != d) throw std::invalid_argument("product: dimension mismatch");
    return WeightFunction(d, Product{std::move(parts)});
  }

  int dim() const { return dim_; }
  const Spec& spec() const { return spec_; }

  WeightValue log_eval(std::span<const double> x) const {
    if (int(x.size()) != dim_) throw std::invalid_argument("point dimension mismatch");
    WeightValue out;
    if (std::holds_alternative<One>(spec_)) return out;
    if (auto* p = std::get_if<PowerExp>(&spec_)) {
      double r = 0.0;
      for (double xi : x) r += xi * xi;
      out.log_w = p->a * std::pow(std::sqrt(r), p->b);
      return out;
    }
    if (auto* p = std::get_if<FromOmega>(&spec_)) {
      double r = 0.0;
      for (double xi : x) r += xi * xi;
      out.log_w = p->omega.eval(std::sqrt(r)) / p->lambda;
      return out;
    }
    if (auto* p = std::get_if<PolyShift>(&spec_)) {
      out = p->base->log_eval(x);
      out.log_w += p->k * std::log(bracket(x));
      return out;
    }
    if (auto* p = std::get_if<AssocDilate>(&spec_)) {
      std::vector<double> y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / p->lambda;
      auto a = associated_function(p->M, y, p->q_cap);
      out.log_w = a.value;
      out.saturated = a.saturated;
      return out;
    }
    const auto& pr = std::get<Product>(spec_);
    for (auto& part : pr.parts) {
      auto v = part.log_eval(x);
      out.log_w += v.log_w;
      out.saturated = out.saturated && v.saturated;
    }
    return out;
  }

  WeightValue log_eval(double t) const {
    std::vector<double> x(std::size_t(dim_), 0.0);
    x[0] = t;
    return log_eval(x);
  }

  /// w(x), flagged: throws when an unsaturated associated-function value would
  /// be silently reported.
  double eval(std::span<const double> x, bool* saturated = nullptr) const {
    auto v = log_eval(x);
    if (saturated)
      *saturated = v.saturated;
    else if (!v.saturated)
      throw std::runtime_error("weight evaluation hit the associated-function horizon");
    return std::exp(v.log_w);
  }

 private:
  int dim_;
  Spec spec_;
};

}  // namespace gsw
