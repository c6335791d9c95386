#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gsw/spaces.hpp"

using namespace gsw;

namespace {

BanachSpaceModel linf_model() {
  return BanachSpaceModel::lp(std::numeric_limits<double>::infinity(),
                              GridSpec::standard(1));
}

}  // namespace

TEST_CASE("gaussian seminorm saturates against a root-factorial sequence") {
  auto f = GridFunction::analytic(GridSpec::standard(1), AnalyticFunction::gaussian(1.0));
  // derivatives are Hermite polynomials times the Gaussian; Cramer's bound
  // |H_q| e^{-x^2/2} <= 1.09 2^{q/2} sqrt(q!) makes h = 4 saturate geometrically
  auto m = WeightSequence::gevrey(0.5, 4.0);
  auto r = seminorm(f, m, WeightFunction::one(1), linf_model(), 24);
  CHECK(r.saturated);
  CHECK_FALSE(r.diverging);
  CHECK(r.value >= 1.0);   // order zero alone gives ||f||_inf / M_0 = 1
  CHECK(r.value <= 1.09);  // Cramer's bound caps every order
  // tail of the per-order profile is decreasing
  for (std::size_t q = r.per_order_log.size() - 5; q < r.per_order_log.size(); ++q)
    CHECK(r.per_order_log[q] <= r.per_order_log[q - 1] + 1e-9);
}

TEST_CASE("undersized h makes the same seminorm diverge") {
  auto f = GridFunction::analytic(GridSpec::standard(1), AnalyticFunction::gaussian(1.0));
  // h = 1/4 < sqrt(2): the ratio grows geometrically and the trend flags it
  auto m = WeightSequence::gevrey(0.5, 0.25);
  auto r = seminorm(f, m, WeightFunction::one(1), linf_model(), 24);
  CHECK_FALSE(r.saturated);
}

TEST_CASE("membership verdicts for the gaussian in root-factorial classes") {
  auto f = GridFunction::analytic(GridSpec::standard(1), AnalyticFunction::gaussian(1.0));
  auto model = linf_model();
  auto M = WeightSequenceSystem::dilated(WeightSequence::gevrey(0.5, 1.0), dyadic_grid(-2, 2));
  auto W = WeightFunctionSystem::dilated(WeightSequence::gevrey(0.5, 1.0), dyadic_grid(-2, 2));
  auto v = membership_verdict(f, M, W, Kind::Roumieu, model, {}, 32);
  CHECK(v.witnessed());
  CHECK(v.witness.count("lambda"));
  CHECK(v.horizon.at("alpha_max") == 32.0);
}

TEST_CASE("membership is refused below the gaussian's regularity") {
  auto f = GridFunction::analytic(GridSpec::standard(1), AnalyticFunction::gaussian(1.0));
  auto model = linf_model();
  // s = 0.3 < 1/2: every dilate's seminorm grows superlinearly in log
  auto M = WeightSequenceSystem::dilated(WeightSequence::gevrey(0.3, 1.0), dyadic_grid(-2, 1));
  auto W = WeightFunctionSystem::explicit_members([] {
    std::vector<std::pair<double, WeightFunction>> ws;
    for (double l : dyadic_grid(-2, 1)) ws.push_back({l, WeightFunction::one(1)});
    return ws;
  }());
  auto v = membership_verdict(f, M, W, Kind::Roumieu, model, {}, 48);
  CHECK(v.falsified());
  auto vb = membership_verdict(f, M, W, Kind::Beurling, model, {}, 48);
  CHECK(vb.falsified());
}

TEST_CASE("periodic seminorm of a pure frequency is exact") {
  // f = cos(4 pi x): |f^(q)| attains (4 pi)^q at cell grid points
  auto f = AnalyticFunction::trig({{{2}, cplx(0.5)}, {{-2}, cplx(0.5)}});
  double h = 30.0;
  auto m = WeightSequence::gevrey(1.0, h);
  auto r = periodic_seminorm(f, m, linf_model(), 16);
  double want = -std::numeric_limits<double>::infinity();
  double run = 0.0;
  for (int q = 0; q <= 16; ++q) {
    want = std::max(want, run);
    run += std::log(4.0 * kPi) - std::log(h) - std::log(double(q + 1));
  }
  CHECK(r.log_value == doctest::Approx(want).epsilon(1e-10));
  CHECK(r.saturated);
}

TEST_CASE("delta-sequence probe agrees with the direct function comparison") {
  auto Wl = derived_function_system(
      WeightSequenceSystem::dilated(WeightSequence::gevrey(0.5, 1.0)));
  auto Wh = derived_function_system(
      WeightSequenceSystem::dilated(WeightSequence::gevrey(1.0, 1.0)));
  auto model = linf_model();
  for (Kind k : {Kind::Beurling, Kind::Roumieu}) {
    auto rep = probe_delta_sequences(Wl, Wh, k, model);
    CHECK(rep.consistent);
    CHECK(rep.direct.witnessed());
    auto rev = probe_delta_sequences(Wh, Wl, k, model);
    CHECK(rev.consistent);
    CHECK_FALSE(rev.direct.witnessed());
  }
}

TEST_CASE("character probe agrees with the direct sequence comparison") {
  auto Ml = WeightSequenceSystem::dilated(WeightSequence::gevrey(0.5, 1.0));
  auto Mh = WeightSequenceSystem::dilated(WeightSequence::gevrey(1.0, 1.0));
  auto model = linf_model();
  for (Kind k : {Kind::Beurling, Kind::Roumieu}) {
    auto rep = probe_characters(Ml, Mh, k, model);
    CHECK(rep.consistent);
    CHECK(rep.direct.witnessed());
    auto rev = probe_characters(Mh, Ml, k, model);
    CHECK(rev.consistent);
    CHECK_FALSE(rev.direct.witnessed());
  }
}

TEST_CASE("weighted L1 embedding holds with the lattice constant") {
  for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
    auto rep = weighted_L1_embedding_check(
        BanachSpaceModel::lp(p, GridSpec::standard(1)), 16);
    CHECK(rep.holds);
    CHECK(rep.worst_ratio > 0.0);
    CHECK(rep.constant > 0.0);
  }
}

TEST_CASE("polynomial multipliers match polynomially shifted weights") {
  auto f = GridFunction::analytic(GridSpec::standard(1), AnalyticFunction::gaussian(1.0));
  auto M = WeightSequenceSystem::dilated(WeightSequence::gevrey(0.5, 1.0), dyadic_grid(-2, 2));
  auto W = WeightFunctionSystem::dilated(WeightSequence::gevrey(0.5, 1.0), dyadic_grid(-2, 2));
  auto rep = polynomial_multiplier_check(f, M, W, Kind::Roumieu, 1, linf_model(), {}, 20);
  CHECK(rep.agree);
  CHECK(rep.weighted_side.status != Status::Falsified);
  CHECK(rep.multiplied_side.status != Status::Falsified);
}

TEST_CASE("dimension mismatches are rejected") {
  auto f = GridFunction::analytic(GridSpec::standard(1), AnalyticFunction::gaussian(1.0));
  CHECK_THROWS(seminorm(f, WeightSequence::gevrey(1.0, 1.0, 2), WeightFunction::one(1),
                        linf_model(), 4));
  CHECK_THROWS(seminorm(f, WeightSequence::gevrey(1.0, 1.0), WeightFunction::one(2),
                        linf_model(), 4));
}
