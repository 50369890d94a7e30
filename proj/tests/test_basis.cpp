#include <rrm/basis.hpp>
#include <rrm/quadrature.hpp>

#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

using namespace rrm;

namespace {

// Patch with pairwise different cell sizes and gamma_x = 2, gamma_y = 14/9.
PatchGeometry skewed_patch() {
  return PatchGeometry{{1.0, 2.0, 4.0}, {3.0, 5.0, 7.0}, 0.0, 0.0};
}

PatchGeometry uniform_patch(Real h) {
  return PatchGeometry{{h, h, h}, {h, h, h}, 0.0, 0.0};
}

Real mono(int j, Real s, Real t) {
  constexpr int es[8] = {0, 1, 0, 2, 1, 0, 3, 0};
  constexpr int et[8] = {0, 0, 1, 0, 1, 2, 0, 3};
  return std::pow(s, es[j]) * std::pow(t, et[j]);
}

Real mono_ds(int j, Real s, Real t) {
  constexpr int es[8] = {0, 1, 0, 2, 1, 0, 3, 0};
  constexpr int et[8] = {0, 0, 1, 0, 1, 2, 0, 3};
  if (es[j] == 0) return 0.0;
  return es[j] * std::pow(s, es[j] - 1) * std::pow(t, et[j]);
}

Real mono_dt(int j, Real s, Real t) {
  constexpr int es[8] = {0, 1, 0, 2, 1, 0, 3, 0};
  constexpr int et[8] = {0, 0, 1, 0, 1, 2, 0, 3};
  if (et[j] == 0) return 0.0;
  return et[j] * std::pow(s, es[j]) * std::pow(t, et[j] - 1);
}

// The eight reference DOF functionals applied to a polynomial given by its
// monomial coefficients, with the edge means evaluated by quadrature.
std::array<Real, 8> apply_dofs(const Coeff8& c) {
  const QuadRule1D rule = gauss_rule_1d(5);
  const auto val = [&](Real s, Real t) {
    Real acc = 0;
    for (int j = 0; j < 8; ++j) acc += c[j] * mono(j, s, t);
    return acc;
  };
  const auto ds = [&](Real s, Real t) {
    Real acc = 0;
    for (int j = 0; j < 8; ++j) acc += c[j] * mono_ds(j, s, t);
    return acc;
  };
  const auto dt = [&](Real s, Real t) {
    Real acc = 0;
    for (int j = 0; j < 8; ++j) acc += c[j] * mono_dt(j, s, t);
    return acc;
  };
  std::array<Real, 8> out{};
  out[0] = val(0, 0);
  out[1] = val(0, 1);
  out[2] = val(1, 1);
  out[3] = val(1, 0);
  for (int q = 0; q < rule.nodes.size(); ++q) {
    const Real z = rule.nodes[q], w = rule.weights[q];
    out[4] += w * ds(0.0, z);
    out[5] += w * dt(z, 1.0);
    out[6] += w * ds(1.0, z);
    out[7] += w * dt(z, 0.0);
  }
  return out;
}

}  // namespace

TEST_CASE("reference dof matrix matches direct evaluation of the functionals") {
  const Matrix8 g = reference_dof_matrix();
  for (int j = 0; j < 8; ++j) {
    Coeff8 unit = Coeff8::Zero();
    unit[j] = 1.0;
    const auto dofs = apply_dofs(unit);
    for (int i = 0; i < 8; ++i) CHECK(g(i, j) == doctest::Approx(dofs[i]).epsilon(1e-13));
  }
}

TEST_CASE("reference dof matrix rows are the known rational table") {
  const Real want[8][8] = {
      {1, 0, 0, 0, 0, 0, 0, 0},
      {1, 0, 1, 0, 0, 1, 0, 1},
      {1, 1, 1, 1, 1, 1, 1, 1},
      {1, 1, 0, 1, 0, 0, 1, 0},
      {0, 1, 0, 0, 0.5, 0, 0, 0},
      {0, 0, 1, 0, 0.5, 2, 0, 3},
      {0, 1, 0, 2, 0.5, 0, 3, 0},
      {0, 0, 1, 0, 0.5, 0, 0, 0},
  };
  const Matrix8 g = reference_dof_matrix();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) CHECK(g(i, j) == doctest::Approx(want[i][j]).epsilon(1e-15));
}

TEST_CASE("reference shapes are dual to the dof functionals") {
  const Matrix8 shapes = reference_shapes();
  const Matrix8 g = reference_dof_matrix();
  CHECK((g * shapes - Matrix8::Identity()).cwiseAbs().maxCoeff() < 1e-13);
  // And independently, through the quadrature evaluation of the functionals.
  for (int j = 0; j < 8; ++j) {
    const auto dofs = apply_dofs(shapes.col(j));
    for (int i = 0; i < 8; ++i)
      CHECK(dofs[i] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
  }
}

TEST_CASE("patch dof tables on a uniform patch") {
  const PatchGeometry pg = uniform_patch(0.5);
  CHECK(pg.gamma_x() == doctest::Approx(1.0));
  CHECK(pg.v11() == doctest::Approx(0.25));
  const PatchDofValues d = patch_dof_tables(pg);
  CHECK(d.v[0][0] == doctest::Approx(0.25));
  CHECK(d.v[1][0] == doctest::Approx(0.25));
  CHECK(d.v[1][1] == doctest::Approx(0.25));
  CHECK(d.u[0][0] == doctest::Approx(0.5));
  CHECK(d.u[1][0] == doctest::Approx(1.0));
  CHECK(d.u[2][0] == doctest::Approx(0.5));
  CHECK(d.u[1][1] == doctest::Approx(-1.0));
  CHECK(d.z[0][0] == doctest::Approx(0.5));
  CHECK(d.z[1][0] == doctest::Approx(-0.5));
  CHECK(d.z[0][1] == doctest::Approx(1.0));
}

TEST_CASE("patch dof tables on a skewed patch") {
  const PatchGeometry pg = skewed_patch();
  CHECK(pg.gamma_x() == doctest::Approx(2.0));
  CHECK(pg.gamma_y() == doctest::Approx(14.0 / 9));
  CHECK(pg.v11() == doctest::Approx(1.0 / 8));

  const PatchDofValues d = patch_dof_tables(pg);
  CHECK(d.v[0][0] == doctest::Approx(1.0 / 8));
  CHECK(d.v[1][0] == doctest::Approx(1.0 / 4));
  CHECK(d.v[0][1] == doctest::Approx(7.0 / 36));
  CHECK(d.v[1][1] == doctest::Approx(7.0 / 18));
  CHECK(d.u[0][0] == doctest::Approx(1.0 / 24));
  CHECK(d.u[1][0] == doctest::Approx(1.0 / 8));
  CHECK(d.u[2][0] == doctest::Approx(1.0 / 12));
  CHECK(d.u[0][1] == doctest::Approx(-1.0 / 36));
  CHECK(d.u[1][1] == doctest::Approx(-1.0 / 12));
  CHECK(d.u[2][1] == doctest::Approx(-1.0 / 18));
  CHECK(d.z[0][0] == doctest::Approx(1.0 / 8));
  CHECK(d.z[1][0] == doctest::Approx(-1.0 / 16));
  CHECK(d.z[0][1] == doctest::Approx(23.0 / 72));
  CHECK(d.z[1][1] == doctest::Approx(-23.0 / 144));
  CHECK(d.z[0][2] == doctest::Approx(7.0 / 36));
  CHECK(d.z[1][2] == doctest::Approx(-7.0 / 72));
}

namespace {

// Mean of d/dy over the horizontal edge of piece (r, c) at t = t_edge, and of
// d/dx over the vertical edge at s = s_edge, straight from the coefficients.
Real edge_mean_dy(const PatchBasis& phi, int r, int c, Real t_edge) {
  const Coeff6& p = phi.piece[static_cast<size_t>(3 * r + c)];
  return (p[2] + 0.5 * p[4] + 2.0 * p[5] * t_edge) / phi.geom.H[r];
}

Real edge_mean_dx(const PatchBasis& phi, int r, int c, Real s_edge) {
  const Coeff6& p = phi.piece[static_cast<size_t>(3 * r + c)];
  return (p[1] + 2.0 * p[3] * s_edge + 0.5 * p[4]) / phi.geom.L[c];
}

Real corner_value(const PatchBasis& phi, int r, int c, Real s, Real t) {
  return eval6(phi.piece[static_cast<size_t>(3 * r + c)], s, t);
}

void check_patch_conformity(const PatchBasis& phi) {
  // Values agree at every patch grid point, from every piece that touches it.
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      std::vector<Real> vals;
      for (int r = std::max(0, n - 1); r <= std::min(2, n); ++r)
        for (int c = std::max(0, m - 1); c <= std::min(2, m); ++c)
          vals.push_back(corner_value(phi, r, c, m == c ? 0.0 : 1.0, n == r ? 0.0 : 1.0));
      const bool boundary = m == 0 || m == 3 || n == 0 || n == 3;
      for (Real v : vals) {
        if (boundary)
          CHECK(std::abs(v) < 1e-12);
        else
          CHECK(v == doctest::Approx(vals[0]).epsilon(1e-12));
      }
    }

  // Mean normal derivatives agree across interior edges and vanish on the
  // patch boundary.
  for (int c = 0; c < 3; ++c) {
    CHECK(std::abs(edge_mean_dy(phi, 0, c, 0.0)) < 1e-12);
    CHECK(std::abs(edge_mean_dy(phi, 2, c, 1.0)) < 1e-12);
    for (int n = 1; n <= 2; ++n)
      CHECK(edge_mean_dy(phi, n - 1, c, 1.0) ==
            doctest::Approx(edge_mean_dy(phi, n, c, 0.0)).epsilon(1e-12));
  }
  for (int r = 0; r < 3; ++r) {
    CHECK(std::abs(edge_mean_dx(phi, r, 0, 0.0)) < 1e-12);
    CHECK(std::abs(edge_mean_dx(phi, r, 2, 1.0)) < 1e-12);
    for (int m = 1; m <= 2; ++m)
      CHECK(edge_mean_dx(phi, r, m - 1, 1.0) ==
            doctest::Approx(edge_mean_dx(phi, r, m, 0.0)).epsilon(1e-12));
  }
}

}  // namespace

TEST_CASE("patch basis is conforming in the vertex-and-edge-mean sense") {
  check_patch_conformity(build_patch_basis(uniform_patch(0.25)));
  check_patch_conformity(build_patch_basis(skewed_patch()));
}

TEST_CASE("dof read-back inverts the construction") {
  for (const PatchGeometry& pg : {uniform_patch(0.125), skewed_patch()}) {
    const PatchDofValues want = patch_dof_tables(pg);
    const PatchDofValues got = dof_values(build_patch_basis(pg));
    for (int m = 0; m < 2; ++m)
      for (int n = 0; n < 2; ++n)
        CHECK(got.v[m][n] == doctest::Approx(want.v[m][n]).epsilon(1e-12));
    for (int c = 0; c < 3; ++c)
      for (int n = 0; n < 2; ++n)
        CHECK(got.u[c][n] == doctest::Approx(want.u[c][n]).epsilon(1e-12));
    for (int m = 0; m < 2; ++m)
      for (int r = 0; r < 3; ++r)
        CHECK(got.z[m][r] == doctest::Approx(want.z[m][r]).epsilon(1e-12));
  }
}

TEST_CASE("point evaluation is consistent with finite differences") {
  const PatchBasis phi = build_patch_basis(skewed_patch());
  const Real x = 1.7, y = 4.1, h = 1e-6;
  REQUIRE(phi.contains(x, y));
  const Vec2 g = phi.gradient(x, y);
  CHECK(g[0] == doctest::Approx((phi.value(x + h, y) - phi.value(x - h, y)) / (2 * h))
                    .epsilon(1e-6));
  CHECK(g[1] == doctest::Approx((phi.value(x, y + h) - phi.value(x, y - h)) / (2 * h))
                    .epsilon(1e-6));
  const Hessian hs = phi.hessian(x, y);
  CHECK(hs[0] ==
        doctest::Approx((phi.value(x + h, y) - 2 * phi.value(x, y) + phi.value(x - h, y)) /
                        (h * h))
            .epsilon(1e-3));
  CHECK(phi.value(-0.5, 1.0) == 0.0);
  CHECK(phi.value(8.0, 1.0) == 0.0);
  CHECK(phi.locate(0.5, 1.0) == 0);
  CHECK(phi.locate(1.5, 4.0) == 4);
  CHECK(phi.locate(6.9, 14.9) == 8);
  CHECK(phi.locate(100.0, 0.0) == -1);
}

TEST_CASE("interior basis on a uniform grid is normalized at the patch node") {
  const Grid g = build_uniform_grid(Domain::unit_square(), 8);
  const ExtendedGrid ext = extend_grid(g, classify(g));
  const BasisSet bs = build_interior_basis(ext);
  REQUIRE(bs.size() == 36);
  for (const PatchBasis& phi : bs.phi) {
    CHECK(phi.value(phi.xs[1], phi.ys[1]) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(phi.value(phi.xs[2], phi.ys[2]) == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("extended basis covers real and added cells") {
  const Grid g = build_uniform_grid(Domain::unit_square(), 8);
  const ExtendedGrid ext = extend_grid(g, classify(g));
  const BasisSet bs = build_extended_basis(ext);
  CHECK(bs.size() == 100);

  // Every active base cell is covered by all nine surrounding supports.
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) CHECK(bs.cover_of(i, j).count == 9);
}

TEST_CASE("interior basis cover shrinks near the boundary") {
  const Grid g = build_uniform_grid(Domain::unit_square(), 8);
  const ExtendedGrid ext = extend_grid(g, classify(g));
  const BasisSet bs = build_interior_basis(ext);
  CHECK(bs.cover_of(0, 0).count == 1);
  CHECK(bs.cover_of(4, 0).count == 3);
  CHECK(bs.cover_of(4, 4).count == 9);

  // The corner cell is the lower-left piece of the only patch that covers it.
  const auto& cov = bs.cover_of(0, 0);
  CHECK(cov.piece[0] == 0);
  const int b = cov.index[0];
  const Coeff6 c = combine_on_cell(bs, Vector::Unit(bs.size(), b), 0, 0);
  CHECK((c - bs.phi[static_cast<size_t>(b)].piece[0]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("construction rejects a cell outside the extension") {
  const Grid g = build_uniform_grid(Domain::unit_square(), 4);
  const ExtendedGrid ext = extend_grid(g, classify(g));
  CHECK_THROWS_AS(ext.patch(0, 0), ConfigError);
}
