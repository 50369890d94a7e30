#include <rrm/analysis.hpp>
#include <rrm/grid.hpp>
#include <rrm/interpolation.hpp>

#include <doctest.h>

#include <cmath>

using namespace rrm;

namespace {
constexpr Real kPi = 3.14159265358979323846;
}

TEST_CASE("error report against the zero field returns reference norms") {
  const Grid g = build_uniform_grid(Domain::unit_square(), 16);
  const ExtendedGrid ext = extend_grid(g, classify(g));
  const BasisSet bs = build_interior_basis(ext);
  const Vector zero = Vector::Zero(bs.size());
  const Real eps = 0.25;

  const ErrorReport rep = discrete_solution_error(sine_field(), zero, bs, eps);
  CHECK(rep.h == doctest::Approx(1.0 / 16));
  CHECK(rep.eps == eps);
  CHECK(rep.err_h1 == doctest::Approx(kPi / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(rep.err_h2 == doctest::Approx(kPi * kPi).epsilon(1e-9));
  CHECK(rep.energy ==
        doctest::Approx(std::sqrt(eps * eps * std::pow(kPi, 4) + kPi * kPi / 2)).epsilon(1e-9));
  CHECK(rep.ref_energy == doctest::Approx(rep.energy).epsilon(1e-14));
  CHECK(rep.rel_energy == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("energy recombines the two seminorm errors") {
  const Grid g = build_uniform_grid(Domain::unit_square(), 8);
  const ExtendedGrid ext = extend_grid(g, classify(g));
  const BasisSet bs = build_interior_basis(ext);
  const ExactField u = squared_sine_field();
  const Vector coeffs = interpolate_interior(bs, [&](Real x, Real y) { return u.value(x, y); });

  for (Real eps : {1.0, 1e-3}) {
    const ErrorReport rep = discrete_solution_error(u, coeffs, bs, eps);
    CHECK(rep.energy == doctest::Approx(std::sqrt(eps * eps * rep.err_h2 * rep.err_h2 +
                                                  rep.err_h1 * rep.err_h1))
                            .epsilon(1e-13));
    CHECK(rep.rel_energy > 0.0);
    CHECK(rep.rel_energy < 1.0);
  }
}

TEST_CASE("eigen rates recover the order of a synthetic sequence") {
  // lambda_l = 3 + 4^{-l}: first differences shrink by 4 per level, so the
  // three-level formula gives exactly 2.
  std::vector<Real> h{0.25, 0.125, 0.0625, 0.03125};
  std::vector<std::vector<Real>> lams;
  for (int l = 0; l < 4; ++l)
    lams.push_back({3.0 + std::pow(4.0, -l), 7.0, 5.0 - std::pow(2.0, -l)});

  const RateTable t = eigen_rate_table(h, lams);
  REQUIRE(t.step_rates.rows() == 2);
  REQUIRE(t.columns.size() == 3);
  CHECK(t.columns[0] == "lambda_1");
  CHECK(t.step_rates(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t.step_rates(1, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t.overall[0] == doctest::Approx(2.0).epsilon(1e-12));
  // Stagnant column: undefined rate.
  CHECK(std::isnan(t.step_rates(0, 1)));
  // First-order column.
  CHECK(t.overall[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigen rates flag nonmonotone triples") {
  std::vector<Real> h{0.25, 0.125, 0.0625};
  std::vector<std::vector<Real>> lams{{1.0}, {2.0}, {1.5}};
  const RateTable t = eigen_rate_table(h, lams);
  CHECK(std::isnan(t.step_rates(0, 0)));
  CHECK_THROWS_AS(eigen_rate_table({0.5, 0.25}, {{1.0}, {2.0}}), ConfigError);
}

TEST_CASE("norm rates match a power law exactly") {
  std::vector<Real> h{0.5, 0.25, 0.125};
  Matrix values(3, 2);
  for (int l = 0; l < 3; ++l) {
    values(l, 0) = 3.0 * std::pow(h[static_cast<size_t>(l)], 2.0);
    values(l, 1) = 0.7 * std::pow(h[static_cast<size_t>(l)], 0.5);
  }
  const RateTable t = norm_rate_table(h, {"quad", "half"}, values);
  REQUIRE(t.step_rates.rows() == 2);
  CHECK(t.step_rates(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t.step_rates(1, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t.overall[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t.overall[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("rate helpers guard degenerate inputs") {
  CHECK(pair_rate(0.5, 1.0, 0.25, 0.25) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::isnan(pair_rate(0.5, 0.0, 0.25, 0.25)));
  CHECK(std::isnan(pair_rate(0.5, 1.0, 0.5, 0.5)));
  CHECK(lsq_slope({0.5, 0.25, 0.125}, {4.0, 1.0, 0.25}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::isnan(lsq_slope({0.5}, {1.0})));
  CHECK(std::isnan(lsq_slope({0.5, 0.25}, {1.0, -1.0})));
}
