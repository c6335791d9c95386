#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "gsw/analytic.hpp"

using namespace gsw;

namespace {

// 4th-order central difference, independent of the exact-derivative engine
template <class F>
cplx fd1(F&& f, double x, double h = 1e-4) {
  return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

// dense uniform Simpson, used as an independent quadrature oracle
template <class F>
cplx simpson_dense(F&& f, double a, double b, int m) {
  double h = (b - a) / m;
  cplx s = f(a) + f(b);
  for (int k = 1; k < m; ++k) s += f(a + k * h) * ((k % 2) ? 4.0 : 2.0);
  return s * (h / 3.0);
}

}  // namespace

TEST_CASE("gaussian derivatives follow the hermite recursion") {
  double a = 1.3;
  auto g = AnalyticFunction::gaussian(a);
  for (double x : {-1.7, 0.0, 0.4, 2.2}) {
    double e = std::exp(-a * x * x);
    CHECK(g.value1(x).real() == doctest::Approx(e).epsilon(1e-14));
    CHECK(g.derivative1(1, x).real() == doctest::Approx(-2.0 * a * x * e).epsilon(1e-13));
    CHECK(g.derivative1(2, x).real() ==
          doctest::Approx((4.0 * a * a * x * x - 2.0 * a) * e).epsilon(1e-12));
  }
  // higher orders against finite differences of the previous order
  for (int q = 3; q <= 6; ++q)
    for (double x : {-0.8, 0.9}) {
      cplx want = fd1([&](double t) { return g.derivative1(q - 1, t); }, x);
      CHECK(std::abs(g.derivative1(q, x) - want) <= 1e-6 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("sinc phase values and moments match quadrature") {
  auto s = AnalyticFunction::sinc_phase();
  CHECK(std::abs(s.value1(0.0) - cplx(1.0)) <= 1e-12);
  for (double x : {0.3, 1.0, 2.7, -4.2}) {
    cplx d(0.0, 2.0 * kPi * x);
    cplx want = (cplx(1.0) - std::exp(-d)) / d;
    CHECK(std::abs(s.value1(x) - want) <= 1e-12);
    cplx dq = simpson_dense(
        [&](double xi) {
          return cplx(0.0, -2.0 * kPi * xi) * std::exp(cplx(0.0, -2.0 * kPi * xi * x));
        },
        0.0, 1.0, 4096);
    CHECK(std::abs(s.derivative1(1, x) - dq) <= 1e-10);
  }
  // lattice interpolation property: chi(j) = 0 at nonzero integers
  for (int j : {1, -1, 5, -17}) CHECK(std::abs(s.value1(double(j))) <= 1e-13);
}

TEST_CASE("unit interval moments survive the large-argument recursion") {
  for (double z : {50.0, -120.0}) {
    auto I = detail::unit_interval_moments(z, 80);
    for (int q : {0, 10, 49, 80}) {
      cplx want = simpson_dense(
          [&](double xi) { return std::pow(xi, double(q)) * std::exp(cplx(0.0, -z * xi)); },
          0.0, 1.0, 200000);
      CHECK(std::abs(I[std::size_t(q)] - want) <= 1e-9);
    }
  }
}

TEST_CASE("bump cutoff: plateau, support, symmetry, smoothness") {
  for (int deg : {4, 8}) {
    double r = 1.5;
    auto chi = bump_poly(deg, r);
    CHECK(chi.eval(0.0) == doctest::Approx(1.0));
    CHECK(chi.eval(0.4 * r) == doctest::Approx(1.0));
    CHECK(std::abs(chi.eval(r - 1e-9)) <= 1e-8);
    CHECK(chi.eval(r) == 0.0);
    CHECK(chi.eval(-r - 0.1) == 0.0);
    for (double x : {0.6 * r, 0.9 * r, 0.55 * r})
      CHECK(std::abs(chi.eval(x) - chi.eval(-x)) <= 1e-10);
    // midpoint of the transition is 1/2 by the smoothstep symmetry
    CHECK(chi.eval(0.75 * r) == doctest::Approx(0.5).epsilon(1e-9));
    // derivatives up to deg-1 vanish at the support edge, so the cutoff
    // glues C^{deg-1} to zero; evaluation noise scales with the coefficients
    PiecewisePoly d = chi;
    for (int q = 1; q < deg; ++q) {
      d = d.derivative();
      double scale = 0.0;
      for (const auto& c : d.coef)
        for (double v : c) scale = std::max(scale, std::abs(v));
      CHECK(std::abs(d.eval(r - 1e-9)) <= 1e-11 * scale + 1e-9);
      CHECK(std::abs(d.eval(-r + 1e-9)) <= 1e-11 * scale + 1e-9);
    }
  }
}

TEST_CASE("piecewise node derivatives agree with finite differences") {
  auto f = AnalyticFunction::piecewise(bump_poly(8, 2.0));
  for (double x : {0.3, 1.2, 1.8, -1.5})
    for (int q : {1, 2, 3}) {
      cplx want = fd1([&](double t) { return f.derivative1(q - 1, t); }, x, 1e-3);
      CHECK(std::abs(f.derivative1(q, x) - want) <= 1e-5 * (1.0 + std::abs(want)));
    }
  CHECK(f.support_radius() == doctest::Approx(2.0));
}

TEST_CASE("trig combinations reproduce cosine") {
  int k = 3;
  auto c = AnalyticFunction::trig({{{k}, cplx(0.5)}, {{-k}, cplx(0.5)}});
  for (double x : {0.1, 0.37, -1.4}) {
    CHECK(c.value1(x).real() == doctest::Approx(std::cos(2.0 * kPi * k * x)).epsilon(1e-12));
    CHECK(std::abs(c.value1(x).imag()) <= 1e-12);
    CHECK(c.derivative1(1, x).real() ==
          doctest::Approx(-2.0 * kPi * k * std::sin(2.0 * kPi * k * x)).epsilon(1e-11));
  }
}

TEST_CASE("product rule, translation, and linear combinations") {
  auto g = AnalyticFunction::gaussian(0.7);
  auto b = AnalyticFunction::piecewise(bump_poly(8, 2.0));
  auto p = AnalyticFunction::product(g, b);
  for (double x : {0.2, 0.9, 1.6})
    for (int q : {1, 2, 3}) {
      cplx want = fd1([&](double t) { return p.derivative1(q - 1, t); }, x, 1e-5);
      CHECK(std::abs(p.derivative1(q, x) - want) <= 1e-5 * (1.0 + std::abs(want)));
    }

  auto t = AnalyticFunction::translate(g, {0.7});
  for (double x : {-0.3, 1.1})
    CHECK(std::abs(t.value1(x) - g.value1(x - 0.7)) <= 1e-15);

  auto s = AnalyticFunction::sum({{cplx(2.0), g}, {cplx(-1.0), t}});
  for (double x : {0.0, 0.5})
    CHECK(std::abs(s.value1(x) - (2.0 * g.value1(x) - t.value1(x))) <= 1e-15);
}

TEST_CASE("tensor factorizes mixed derivatives") {
  auto g = AnalyticFunction::gaussian(1.0);
  auto b = AnalyticFunction::piecewise(bump_poly(8, 2.0));
  auto t = AnalyticFunction::tensor({g, b});
  REQUIRE(t.dim() == 2);
  MultiIndex a = MultiIndex::zero(2);
  a.c = {2, 1};
  std::vector<double> x{0.4, 0.9};
  cplx want = g.derivative1(2, 0.4) * b.derivative1(1, 0.9);
  CHECK(std::abs(t.derivative(a, x) - want) <= 1e-14);
  CHECK_THROWS(t.derivative(MultiIndex::zero(1), x));
}

TEST_CASE("convolution node matches an independent quadrature") {
  auto g = AnalyticFunction::gaussian(1.0);
  auto ker = AnalyticFunction::piecewise(bump_poly(6, 1.0));
  auto c = AnalyticFunction::convolution(g, ker, 256);
  for (double x : {0.0, 0.8, -1.5}) {
    cplx want = simpson_dense(
        [&](double t) { return g.value1(x - t) * ker.value1(t); }, -1.0 + 1e-12,
        1.0 - 1e-12, 20000);
    CHECK(std::abs(c.value1(x) - want) <= 1e-10);
    cplx dwant = simpson_dense(
        [&](double t) { return g.derivative1(1, x - t) * ker.value1(t); }, -1.0 + 1e-12,
        1.0 - 1e-12, 20000);
    CHECK(std::abs(c.derivative1(1, x) - dwant) <= 1e-10);
  }
  CHECK_THROWS(AnalyticFunction::convolution(g, AnalyticFunction::gaussian(2.0)));
}

TEST_CASE("fourier transform of a piecewise polynomial is exact") {
  auto chi = bump_poly(4, 1.0);
  auto hat = AnalyticFunction::fourier_of_piecewise(chi);
  auto f = AnalyticFunction::piecewise(chi);
  for (double x : {0.0, 0.6, 2.3, -7.5}) {
    cplx want = simpson_dense(
        [&](double xi) { return f.value1(xi) * std::exp(cplx(0.0, -2.0 * kPi * xi * x)); },
        -1.0 + 1e-12, 1.0 - 1e-12, 40000);
    CHECK(std::abs(hat.value1(x) - want) <= 1e-10);
  }
  // hat-chi(0) is the mass of chi
  cplx mass = simpson_dense([&](double xi) { return f.value1(xi); }, -1.0 + 1e-12,
                            1.0 - 1e-12, 40000);
  CHECK(std::abs(hat.value1(0.0) - mass) <= 1e-10);
  // derivative transforms the polynomially weighted integrand
  cplx dwant = simpson_dense(
      [&](double xi) {
        return cplx(0.0, -2.0 * kPi * xi) * f.value1(xi) *
               std::exp(cplx(0.0, -2.0 * kPi * xi * 0.6));
      },
      -1.0 + 1e-12, 1.0 - 1e-12, 40000);
  CHECK(std::abs(hat.derivative1(1, 0.6) - dwant) <= 1e-10);
}

TEST_CASE("gaussian cell average matches the defining integral") {
  double a = 0.8, b = 2.0 * a;
  auto psi = AnalyticFunction::gauss_cell_average(a);
  for (double x : {-0.5, 0.2, 1.4}) {
    cplx want = simpson_dense(
        [&](double t) { return cplx(std::sqrt(b / kPi) * std::exp(-b * t * t)); },
        x - 1.0, x, 8192);
    CHECK(std::abs(psi.value1(x) - want) <= 1e-12);
    cplx dwant = fd1([&](double t) { return psi.value1(t); }, x);
    CHECK(std::abs(psi.derivative1(1, x) - dwant) <= 1e-9);
  }
}

TEST_CASE("periodic sum equals the direct translate sum") {
  auto f = AnalyticFunction::piecewise(bump_poly(4, 1.0));
  int J = 3;
  auto per = AnalyticFunction::periodic_sum(f, J);
  for (double x : {0.1, 0.45, -0.3}) {
    cplx want(0.0);
    for (int j = -J; j <= J; ++j) want += f.value1(x - j);
    CHECK(std::abs(per.value1(x) - want) <= 1e-14);
    // support radius 1 at unit spacing: the sum is 1-periodic well inside
    CHECK(std::abs(per.value1(x) - per.value1(x + 1.0)) <= 1e-14);
  }
}

TEST_CASE("panel simpson converges at fourth order") {
  auto f = [](double x) { return cplx(std::exp(x)); };
  std::vector<double> edges{0.0, 0.4, 1.0};
  double exact = std::exp(1.0) - 1.0;
  double e1 = std::abs(nodes::simpson_panels(f, edges, 8) - exact);
  double e2 = std::abs(nodes::simpson_panels(f, edges, 16) - exact);
  CHECK(e2 < e1);
  CHECK(e1 / e2 >= 8.0);  // fourth order: ratio ~16
}

TEST_CASE("zero function and empty support") {
  auto z = AnalyticFunction::zero(2);
  CHECK(std::abs(z.value(std::vector<double>{3.0, 4.0})) == 0.0);
  CHECK(z.support_radius() == 0.0);
}
