#include <rrm/interpolation.hpp>

#include <cmath>

namespace rrm {

std::array<Real, 5> lambda_weights(const PatchGeometry& pg) {
  const Real L0 = pg.L[0], L1 = pg.L[1], L2 = pg.L[2];
  const Real H0 = pg.H[0], H1 = pg.H[1], H2 = pg.H[2];
  std::array<Real, 5> w;
  w[0] = -L1 * L1 / ((L0 + L1) * (L0 + L1 + L2));
  w[1] = -L1 * L1 / ((L1 + L2) * (L0 + L1 + L2));
  w[2] = -H1 * H1 / ((H0 + H1) * (H0 + H1 + H2));
  w[3] = -H1 * H1 / ((H1 + H2) * (H0 + H1 + H2));
  w[4] = 1.0 - (w[0] + w[1] + w[2] + w[3]);
  return w;
}

Real lambda(const PatchGeometry& pg, const ScalarField& f, const QuadRule2D& rule) {
  const std::array<Real, 5> w = lambda_weights(pg);
  constexpr int col[5] = {0, 2, 1, 1, 1};
  constexpr int row[5] = {1, 1, 0, 2, 1};
  Real acc = 0.0;
  for (int m = 0; m < 5; ++m) {
    const int c = col[m], r = row[m];
    acc += w[m] * cell_mean(pg.xs(c), pg.ys(r), pg.L[c], pg.H[r], f, rule);
  }
  return acc;
}

namespace {

Vector interpolate(const BasisSet& bs, const ScalarField& f, int p) {
  const QuadRule2D rule = gauss_rule(p);
  Vector coeffs(bs.size());
  for (int k = 0; k < bs.size(); ++k) coeffs[k] = lambda(bs.phi[static_cast<size_t>(k)].geom, f, rule);
  return coeffs;
}

}  // namespace

Vector interpolate_interior(const BasisSet& bs, const ScalarField& f, int p) {
  if (!bs.interior_only)
    throw ConfigError("interpolate_interior: needs an interior-only basis set");
  return interpolate(bs, f, p);
}

Vector interpolate_extended(const BasisSet& bs, const ScalarField& f, int p) {
  if (bs.interior_only)
    throw ConfigError("interpolate_extended: needs a full basis set");
  return interpolate(bs, f, p);
}

Real broken_seminorm_error(const ExactField& v, const Vector& coeffs, const BasisSet& bs,
                           int k, int p) {
  if (k < 0 || k > 2) throw ConfigError("broken_seminorm_error: order must be 0, 1, or 2");
  if (coeffs.size() != bs.size())
    throw ConfigError("broken_seminorm_error: coefficient size mismatch");
  const QuadRule2D rule = gauss_rule(p);
  const Grid& g = bs.ext->base;

  Real acc = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.is_active(i, j)) continue;
      const Coeff6 c = combine_on_cell(bs, coeffs, i, j);
      const Real x0 = g.x_lines[static_cast<size_t>(i)], y0 = g.y_lines[static_cast<size_t>(j)];
      const Real lx = g.hx(i), ly = g.hy(j);
      Real cell = 0.0;
      for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
        const Real s = rule.points(q, 0), t = rule.points(q, 1);
        const Real x = x0 + lx * s, y = y0 + ly * t;
        Real term = 0.0;
        if (k == 0) {
          const Real d = eval6(c, s, t) - v.value(x, y);
          term = d * d;
        } else if (k == 1) {
          const Vec2 d = grad6(c, s, t, lx, ly) - v.grad(x, y);
          term = d.squaredNorm();
        } else {
          const Hessian d = hess6(c, lx, ly) - v.hess(x, y);
          term = d[0] * d[0] + 2.0 * d[1] * d[1] + d[2] * d[2];
        }
        cell += rule.weights[q] * term;
      }
      acc += cell * lx * ly;
    }
  return std::sqrt(acc);
}

}  // namespace rrm
