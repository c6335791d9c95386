#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "gsw/operators.hpp"

using namespace gsw;

TEST_CASE("lattice decay constant against a direct double loop") {
  GridSpec g = GridSpec::standard(1);
  double direct = 0.0;
  for (int j = -int(g.T); j < int(g.T); ++j)
    direct += std::pow(1.0 + double(j) * j, -1.0);
  direct *= std::pow(2.0, 1.0);  // (n+1)^{(n+1)/2} with n = 1
  CHECK(lattice_decay_constant(g) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("interpolating window hits lattice deltas") {
  GridSpec g = GridSpec::standard(1);
  Window w = interpolating_window(AnalyticFunction::gaussian(1.0), g);
  CHECK(w.invariant.witnessed());
  CHECK(w.invariant.witness.at("max_lattice_error") <= 1e-10);
  CHECK(w.decay_ok);
  CHECK(w.decay_norm > 0.0);
  // direct spot checks: psi(0) = 1, psi(j) = 0
  CHECK(std::abs(w.fn.value1(0.0) - cplx(1.0)) <= 1e-12);
  for (int j : {1, -2, 9}) CHECK(std::abs(w.fn.value1(double(j))) <= 1e-12);
}

TEST_CASE("reconstruction recovers the coefficients exactly") {
  GridSpec g = GridSpec::standard(1);
  Window w = interpolating_window(AnalyticFunction::gaussian(1.0), g);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> pos(-64, 64);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  for (int rep = 0; rep < 4; ++rep) {
    SequenceData c = SequenceData::zero(1, 64);
    for (int k = 0; k < 16; ++k) {
      std::vector<int> j{pos(rng)};
      c.at(j) = cplx(val(rng), val(rng));
    }
    GridFunction r = synthesis(c, w);
    SequenceData back = evaluation(r, 64);
    double worst = 0.0;
    for (std::size_t i = 0; i < c.c.size(); ++i)
      worst = std::max(worst, std::abs(c.c[i] - back.c[i]));
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("partition window tiles to one") {
  GridSpec g = GridSpec::standard(1);
  Window w = partition_window(1.0, g);
  CHECK(w.invariant.witnessed());
  CHECK(w.invariant.witness.at("max_cell_error") <= 1e-8);
  CHECK(w.decay_ok);
  // independent check away from the verified cell
  auto tiling = AnalyticFunction::periodic_sum(w.fn, g.default_J());
  for (double x : {3.7, -5.2, 0.13})
    CHECK(std::abs(tiling.value1(x) - cplx(1.0)) <= 1e-8);
}

TEST_CASE("periodization: theta value, periodicity, and tail shrink") {
  GridSpec g = GridSpec::standard(1);
  auto f = GridFunction::analytic(g, AnalyticFunction::gaussian(1.0));
  PeriodizeResult pr = periodize(f);
  double theta = 1.0;
  for (int j = 1; j <= 40; ++j) theta += 2.0 * std::exp(-double(j) * j);
  CHECK(std::abs(pr.g.provider().value1(0.0) - cplx(theta)) <= 1e-12);
  CHECK(pr.periodicity_error <= 1e-12);
  // doubling the truncation shrinks the certified tail
  PeriodizeResult pr2 = periodize(f, 2 * g.default_J());
  CHECK(pr2.tail_bound < 0.6 * pr.tail_bound);
}

TEST_CASE("partition localization reproduces trig polynomials") {
  GridSpec g = GridSpec::standard(1);
  Window w = partition_window(1.0, g);
  std::vector<std::pair<std::vector<int>, cplx>> terms;
  for (int k = -8; k <= 8; ++k)
    terms.push_back({{k}, cplx(1.0 / (1.0 + k * k), 0.3 / (1.0 + std::abs(k)))});
  AnalyticFunction f = AnalyticFunction::trig(terms, 1);
  GridFunction lf = multiply(w, GridFunction::analytic(g, f));
  PeriodizeResult pr = periodize(lf);
  double worst = 0.0;
  for (int i = 0; i <= 256; ++i) {
    double x = -1.0 + 2.0 * i / 256.0;
    worst = std::max(worst, std::abs(pr.g.provider().value1(x) - f.value1(x)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("synthesis norm bound holds across models") {
  GridSpec g = GridSpec::standard(1);
  Window w = interpolating_window(AnalyticFunction::gaussian(1.0), g);
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> pos(-8, 8);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  double inf = std::numeric_limits<double>::infinity();
  for (int rep = 0; rep < 10; ++rep) {
    SequenceData c = SequenceData::zero(1, 8);
    for (int k = 0; k < 7; ++k) {
      std::vector<int> j{pos(rng)};
      c.at(j) = cplx(val(rng), val(rng));
    }
    for (double p : {1.0, 2.0, inf}) {
      SynthesisBound b = synthesis_norm_check(c, w, BanachSpaceModel::lp(p, g));
      CHECK(b.holds);
      CHECK(b.observed <= b.bound + 1e-12);
    }
  }
}

TEST_CASE("lattice sampling by convolution matches direct quadrature") {
  GridSpec g = GridSpec::standard(1);
  auto f = GridFunction::analytic(g, AnalyticFunction::gaussian(0.5));
  auto chi = AnalyticFunction::bump(8, 1.0);
  SequenceData c = sample_convolution(f, chi, 4);
  // oracle: dense uniform Simpson over the kernel support
  for (int j : {-3, 0, 2}) {
    int m = 20000;
    double h = 2.0 / m;
    cplx s(0.0);
    auto integ = [&](double t) {
      return f.provider().value1(double(j) - t) * chi.value1(t);
    };
    s = integ(-1.0 + 1e-12) + integ(1.0 - 1e-12);
    for (int k = 1; k < m; ++k) s += integ(-1.0 + k * h) * ((k % 2) ? 4.0 : 2.0);
    s *= h / 3.0;
    std::vector<int> jj{j};
    CHECK(std::abs(c.at(jj) - s) <= 1e-9);
  }
  // support overflow is rejected
  CHECK_THROWS(sample_convolution(f, chi, int(g.T)));
}

TEST_CASE("decay upgrade normalizes and certifies decay") {
  GridSpec g = GridSpec::standard(1);
  auto f = AnalyticFunction::gaussian(0.5);
  auto psi = AnalyticFunction::bump(8, 1.0);
  DecayUpgradeResult du = decay_upgrade(f, psi, bump_poly(8, 1.0), g);
  CHECK(du.g0_error <= 1e-10);
  CHECK(du.normalizer > 0.0);
  CHECK(du.decay_norm > 0.0);
  // a far-translated f has no overlap with the cutoff at the origin
  auto far = AnalyticFunction::translate(AnalyticFunction::gaussian(1.0), {30.0});
  CHECK_THROWS(decay_upgrade(far, psi, bump_poly(8, 1.0), g));
}

TEST_CASE("parametrix identity converges on the shipped cutoff") {
  Parametrix1D p = Parametrix1D::make(8);
  auto f = AnalyticFunction::bump(8, 2.0);
  ParametrixReport r6 = parametrix_reproduce(p, f, std::ldexp(1.0, -6));
  ParametrixReport r7 = parametrix_reproduce(p, f, std::ldexp(1.0, -7));
  CHECK(r6.max_error <= 1e-6);
  CHECK(r6.max_error / r7.max_error >= 3.0);
}

TEST_CASE("parametrix remainder is supported in the transition annulus") {
  Parametrix1D p = Parametrix1D::make(8);
  for (double t : {0.0, 0.2, 0.45, 1.05, -1.2}) CHECK(p.phi.eval(t) == 0.0);
  CHECK(std::abs(p.phi.eval(0.75)) > 0.0);
  // kernel carries the |x|/2 kink only at the origin
  CHECK(p.kernel.eval(0.0) == doctest::Approx(0.0));
  CHECK(p.kernel.eval(0.3) == doctest::Approx(0.15));
  CHECK(p.kernel.eval(-0.3) == doctest::Approx(0.15));
}

TEST_CASE("window construction error paths") {
  GridSpec g = GridSpec::standard(1);
  CHECK_THROWS(interpolating_window(AnalyticFunction::gaussian(1.0, 2), g));
  CHECK_THROWS(partition_window(-1.0, g));
  // odd phi vanishes at the origin and cannot normalize
  CHECK_THROWS(interpolating_window(
      AnalyticFunction::poly_gauss({cplx(0.0), cplx(1.0)}, 1.0), g));
  Window w = generic_window(AnalyticFunction::gaussian(1.0), g);
  CHECK(w.invariant.witnessed());
  SequenceData c2 = SequenceData::zero(2, 3);
  CHECK_THROWS(synthesis(c2, w));
}
