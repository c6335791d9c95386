#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "gsw/grid.hpp"

using namespace gsw;

namespace {

// independent lattice l^p norm. The unit-cell tiles are block-aligned with the
// pairwise-sum tree and the power-of-two Riemann scaling cancels exactly, so
// summing the 2T cells (zeros included, grid order) reproduces ed_norm bitwise.
double lattice_lp(const SequenceData& c, double p, int half_cells) {
  std::vector<double> cell(std::size_t(2 * half_cells), 0.0);
  for (int k = 0; k < 2 * half_cells; ++k) {
    int j = k - half_cells;
    if (std::abs(j) <= c.J) cell[std::size_t(k)] = std::abs(c.get(std::vector<int>{j}));
  }
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : cell) m = std::max(m, v);
    return m;
  }
  if (p == 1.0) return pairwise_sum(cell);
  for (double& v : cell) v = std::pow(v, p);
  return std::pow(pairwise_sum(cell), 1.0 / p);
}

SequenceData random_sequence(std::mt19937& rng, int J, int nnz) {
  SequenceData c = SequenceData::zero(1, J);
  std::uniform_int_distribution<int> pos(-J, J);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  for (int k = 0; k < nnz; ++k) {
    std::vector<int> j{pos(rng)};
    c.at(j) = cplx(val(rng), val(rng));
  }
  return c;
}

}  // namespace

TEST_CASE("grid validation and layout") {
  GridSpec g = GridSpec::standard(1);
  CHECK(g.per_axis() == 4096);
  CHECK(g.total_points() == 4096);
  CHECK(g.point(0)[0] == doctest::Approx(-32.0));
  CHECK(g.point(g.per_axis() / 2)[0] == doctest::Approx(0.0));
  GridSpec bad{1, 32.0, 0.3};
  CHECK_THROWS(bad.validate());
  CHECK_THROWS(BanachSpaceModel::lp(0.5, GridSpec::standard(1)));
  CHECK_THROWS(BanachSpaceModel::mixed_lp(1.0, 2.0, GridSpec::standard(1)));
}

TEST_CASE("norm oracles on closed-form functions") {
  GridSpec g = GridSpec::standard(1);
  auto gauss = GridFunction::analytic(g, AnalyticFunction::gaussian(1.0));
  auto s = gauss.samples();
  // sup norm of e^{-x^2} is 1, attained at the grid origin
  CHECK(norm_E(BanachSpaceModel::l0(g), s).value == doctest::Approx(1.0));
  auto inf = BanachSpaceModel::lp(std::numeric_limits<double>::infinity(), g);
  CHECK(norm_E(inf, s).value == doctest::Approx(1.0));
  // L1 = sqrt(pi), L2 = (pi/2)^{1/4}; Riemann sums converge fast for h = 1/64
  CHECK(norm_E(BanachSpaceModel::lp(1.0, g), s).value ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-9));
  CHECK(norm_E(BanachSpaceModel::lp(2.0, g), s).value ==
        doctest::Approx(std::pow(kPi / 2.0, 0.25)).epsilon(1e-9));
  // the Gaussian tail certificate holds on the standard box
  CHECK(norm_E(BanachSpaceModel::lp(2.0, g), s).tail_ok);
}

TEST_CASE("indicator tile norms are exact") {
  GridSpec g = GridSpec::standard(1);
  // delta sequence materializes one unit cell of height 1
  SequenceData d = SequenceData::delta(1, 4);
  for (double p : {1.0, 2.0, 3.0}) {
    auto model = BanachSpaceModel::lp(p, g);
    CHECK(ed_norm(model, d).value == doctest::Approx(1.0));
  }
  CHECK(ed_norm(BanachSpaceModel::l0(g), d).value == doctest::Approx(1.0));
}

TEST_CASE("ed norm equals the lattice lp norm bitwise") {
  GridSpec g = GridSpec::standard(1);
  std::mt19937 rng(7);
  double inf = std::numeric_limits<double>::infinity();
  for (int rep = 0; rep < 100; ++rep) {
    SequenceData c = random_sequence(rng, 12, 9);
    for (double p : {1.0, 2.0, inf}) {
      auto model = BanachSpaceModel::lp(p, g);
      CHECK(ed_norm(model, c).value == lattice_lp(c, p, int(g.T)));  // no tolerance
    }
  }
}

TEST_CASE("norm sandwich l1 >= lp >= linf on unit cells") {
  GridSpec g = GridSpec::standard(1);
  std::mt19937 rng(11);
  double inf = std::numeric_limits<double>::infinity();
  for (int rep = 0; rep < 20; ++rep) {
    SequenceData c = random_sequence(rng, 10, 7);
    double n1 = ed_norm(BanachSpaceModel::lp(1.0, g), c).value;
    double n2 = ed_norm(BanachSpaceModel::lp(2.0, g), c).value;
    double ni = ed_norm(BanachSpaceModel::lp(inf, g), c).value;
    CHECK(n1 >= n2 - 1e-12);
    CHECK(n2 >= ni - 1e-12);
  }
}

TEST_CASE("mixed norms on the two-dimensional grid") {
  GridSpec g = GridSpec::standard(2);
  auto f = GridFunction::analytic(g, AnalyticFunction::gaussian(1.0, 2));
  auto s = f.samples();
  // separable: ||e^{-x^2-y^2}||_{L(p1,p2)} = ||e^{-x^2}||_{p1} ||e^{-y^2}||_{p2}
  double l1 = std::sqrt(kPi), l2 = std::pow(kPi / 2.0, 0.25);
  CHECK(norm_E(BanachSpaceModel::mixed_lp(1.0, 2.0, g), s).value ==
        doctest::Approx(l1 * l2).epsilon(1e-6));
  CHECK(norm_E(BanachSpaceModel::mixed_lp(2.0, 1.0, g), s).value ==
        doctest::Approx(l2 * l1).epsilon(1e-6));
  // symmetric data: mixed (2,2) equals plain L2
  CHECK(norm_E(BanachSpaceModel::mixed_lp(2.0, 2.0, g), s).value ==
        doctest::Approx(norm_E(BanachSpaceModel::lp(2.0, g), s).value).epsilon(1e-12));
}

TEST_CASE("weighted ed norm applies the lattice weight") {
  GridSpec g = GridSpec::standard(1);
  auto model = BanachSpaceModel::lp(1.0, g);
  SequenceData c = SequenceData::zero(1, 4);
  c.at(std::vector<int>{0}) = cplx(1.0);
  c.at(std::vector<int>{3}) = cplx(2.0);
  // poly_shift weight: w(x) = (1 + |x|^2)^{k/2}
  auto w = WeightFunction::poly_shift(1.0, WeightFunction::one(1));
  auto r = weighted_ed_norm(model, c, w);
  CHECK(r.saturated);
  CHECK(r.norm.value ==
        doctest::Approx(1.0 + 2.0 * std::sqrt(10.0)).epsilon(1e-12));
}

TEST_CASE("sequence container indexing") {
  SequenceData c = SequenceData::zero(2, 3);
  std::vector<int> j{-3, 2};
  c.at(j) = cplx(5.0);
  CHECK(c.get(j) == cplx(5.0));
  CHECK(c.get(std::vector<int>{4, 0}) == cplx(0.0));  // outside truncation reads zero
  CHECK_THROWS(c.at(std::vector<int>{4, 0}));
  auto back = c.index_of(c.flat(j));
  CHECK(back == j);
}

TEST_CASE("monomial on box is exact") {
  auto m3 = monomial_on_box(3, 8.0);
  for (double x : {-5.0, 0.5, 7.0})
    CHECK(m3.value1(x).real() == doctest::Approx(x * x * x).epsilon(1e-12));
  CHECK(m3.derivative1(1, 2.0).real() == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("error paths: mismatched grids and oversized supports") {
  GridSpec g = GridSpec::standard(1);
  auto model = BanachSpaceModel::lp(2.0, g);
  CHECK_THROWS(norm_E(model, std::vector<cplx>(17)));
  SequenceData wide = SequenceData::zero(1, 40);  // J + 1 > T
  CHECK_THROWS(ed_norm(model, wide));
  SequenceData c2 = SequenceData::zero(2, 3);
  CHECK_THROWS(ed_norm(model, c2));
}
