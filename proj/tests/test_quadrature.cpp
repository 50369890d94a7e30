#include <rrm/quadrature.hpp>

#include <doctest.h>

#include <cmath>

using namespace rrm;

namespace {

// Exact value of the monomial integral over [0,1].
double monomial_integral(int k) { return 1.0 / (k + 1); }

}  // namespace

TEST_CASE("gauss rule integrates monomials up to degree 2p-1 exactly") {
  for (int p = 1; p <= 10; ++p) {
    const QuadRule1D rule = gauss_rule_1d(p);
    REQUIRE(rule.nodes.size() == p);
    double wsum = 0;
    for (int i = 0; i < p; ++i) {
      CHECK(rule.nodes[i] > 0.0);
      CHECK(rule.nodes[i] < 1.0);
      wsum += rule.weights[i];
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 0; k <= 2 * p - 1; ++k) {
      double acc = 0;
      for (int i = 0; i < p; ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], k);
      CHECK(acc == doctest::Approx(monomial_integral(k)).epsilon(1e-13));
    }
  }
}

TEST_CASE("five point rule matches the classical nodes and weights") {
  // Abscissae/weights of the 5-point Gauss-Legendre rule on [-1,1],
  // mapped here to [0,1] as (1 +- x)/2 with weights w/2.
  const double x1 = 0.906179845938664;
  const double x2 = 0.538469310105683;
  const double w1 = 0.236926885056189;
  const double w2 = 0.478628670499366;
  const double w0 = 0.568888888888889;

  const QuadRule1D rule = gauss_rule_1d(5);
  const double expect_nodes[5] = {(1 - x1) / 2, (1 - x2) / 2, 0.5, (1 + x2) / 2, (1 + x1) / 2};
  const double expect_weights[5] = {w1 / 2, w2 / 2, w0 / 2, w2 / 2, w1 / 2};
  for (int i = 0; i < 5; ++i) {
    CHECK(rule.nodes[i] == doctest::Approx(expect_nodes[i]).epsilon(1e-13));
    CHECK(rule.weights[i] == doctest::Approx(expect_weights[i]).epsilon(1e-13));
  }
}

TEST_CASE("tensor rule integrates bivariate monomials on a shifted cell") {
  const QuadRule2D rule = gauss_rule(3);
  REQUIRE(rule.points.rows() == 9);
  // integral of (x-x0)^a (y-y0)^b over [x0,x0+hx] x [y0,y0+hy]
  const double x0 = 0.3, y0 = -0.2, hx = 0.5, hy = 0.25;
  for (int a = 0; a <= 5; ++a) {
    for (int b = 0; b <= 5; ++b) {
      const double got = integrate_cell(
          x0, y0, hx, hy,
          [&](double x, double y) { return std::pow(x - x0, a) * std::pow(y - y0, b); }, rule);
      const double want = std::pow(hx, a + 1) / (a + 1) * std::pow(hy, b + 1) / (b + 1);
      CHECK(got == doctest::Approx(want).epsilon(1e-13));
    }
  }
}

TEST_CASE("cell mean of an affine function is its center value") {
  const QuadRule2D rule = gauss_rule(kOrderGrad);
  const double got =
      cell_mean(1.0, 2.0, 0.4, 0.6, [](double x, double y) { return 3 * x - 7 * y + 1; }, rule);
  CHECK(got == doctest::Approx(3 * 1.2 - 7 * 2.3 + 1).epsilon(1e-14));
}

TEST_CASE("rule order is validated") {
  CHECK_THROWS_AS(gauss_rule_1d(0), ConfigError);
  CHECK_THROWS_AS(gauss_rule_1d(11), ConfigError);
}
