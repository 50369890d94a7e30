#include <rrm/analysis.hpp>

#include <cmath>
#include <limits>

namespace rrm {

namespace {

constexpr Real kNaN = std::numeric_limits<Real>::quiet_NaN();

ErrorReport error_against(const ExactField& u, const Vector& coeffs, const BasisSet& bs,
                          Real eps, int p) {
  if (coeffs.size() != bs.size())
    throw ConfigError("discrete_solution_error: coefficient size mismatch");
  const QuadRule2D rule = gauss_rule(p);
  const Grid& g = bs.ext->base;

  Real e1 = 0.0, e2 = 0.0, r1 = 0.0, r2 = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.is_active(i, j)) continue;
      const Coeff6 c = combine_on_cell(bs, coeffs, i, j);
      const Real x0 = g.x_lines[static_cast<size_t>(i)], y0 = g.y_lines[static_cast<size_t>(j)];
      const Real lx = g.hx(i), ly = g.hy(j);
      const Hessian hh = hess6(c, lx, ly);
      Real ce1 = 0.0, ce2 = 0.0, cr1 = 0.0, cr2 = 0.0;
      for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
        const Real s = rule.points(q, 0), t = rule.points(q, 1);
        const Real x = x0 + lx * s, y = y0 + ly * t;
        const Vec2 gu = u.grad(x, y);
        const Hessian hu = u.hess(x, y);
        const Vec2 gd = grad6(c, s, t, lx, ly) - gu;
        const Hessian hd = hh - hu;
        const Real w = rule.weights[q];
        ce1 += w * gd.squaredNorm();
        ce2 += w * (hd[0] * hd[0] + 2.0 * hd[1] * hd[1] + hd[2] * hd[2]);
        cr1 += w * gu.squaredNorm();
        cr2 += w * (hu[0] * hu[0] + 2.0 * hu[1] * hu[1] + hu[2] * hu[2]);
      }
      const Real area = lx * ly;
      e1 += area * ce1;
      e2 += area * ce2;
      r1 += area * cr1;
      r2 += area * cr2;
    }

  ErrorReport rep;
  rep.h = g.mesh_size();
  rep.eps = eps;
  rep.err_h1 = std::sqrt(e1);
  rep.err_h2 = std::sqrt(e2);
  rep.energy = std::sqrt(eps * eps * e2 + e1);
  rep.ref_energy = std::sqrt(eps * eps * r2 + r1);
  rep.rel_energy = rep.ref_energy > 0.0
                       ? rep.energy / rep.ref_energy
                       : (rep.energy == 0.0 ? 0.0 : std::numeric_limits<Real>::infinity());
  return rep;
}

}  // namespace

ErrorReport discrete_solution_error(const ExactField& u, const Vector& coeffs,
                                    const BasisSet& bs, Real eps, int p) {
  return error_against(u, coeffs, bs, eps, p);
}

ErrorReport boundary_layer_error(const ExactField& u0, const Vector& coeffs,
                                 const BasisSet& bs, Real eps, int p) {
  return error_against(u0, coeffs, bs, eps, p);
}

RateTable eigen_rate_table(const std::vector<Real>& h,
                           const std::vector<std::vector<Real>>& lams) {
  const size_t levels = h.size();
  if (lams.size() != levels) throw ConfigError("eigen_rate_table: level count mismatch");
  if (levels < 3) throw ConfigError("eigen_rate_table: needs at least three levels");
  size_t k = lams[0].size();
  for (const auto& row : lams) k = std::min(k, row.size());
  if (k == 0) throw ConfigError("eigen_rate_table: empty eigenvalue lists");

  RateTable t;
  t.h = h;
  for (size_t q = 0; q < k; ++q) t.columns.push_back("lambda_" + std::to_string(q + 1));
  t.values.resize(static_cast<Eigen::Index>(levels), static_cast<Eigen::Index>(k));
  for (size_t l = 0; l < levels; ++l)
    for (size_t q = 0; q < k; ++q)
      t.values(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(q)) = lams[l][q];

  t.step_rates.resize(static_cast<Eigen::Index>(levels - 2), static_cast<Eigen::Index>(k));
  for (Eigen::Index l = 0; l + 2 < static_cast<Eigen::Index>(levels); ++l)
    for (Eigen::Index q = 0; q < static_cast<Eigen::Index>(k); ++q) {
      const Real d1 = t.values(l, q) - t.values(l + 1, q);
      const Real d2 = t.values(l + 1, q) - t.values(l + 2, q);
      t.step_rates(l, q) =
          (d1 == 0.0 || d2 == 0.0 || (d1 > 0.0) != (d2 > 0.0)) ? kNaN : std::log2(std::abs(d1 / d2));
    }
  for (Eigen::Index q = 0; q < static_cast<Eigen::Index>(k); ++q)
    t.overall.push_back(t.step_rates(t.step_rates.rows() - 1, q));
  return t;
}

RateTable norm_rate_table(const std::vector<Real>& h, const std::vector<std::string>& columns,
                          const Matrix& values) {
  const Eigen::Index levels = static_cast<Eigen::Index>(h.size());
  if (values.rows() != levels || values.cols() != static_cast<Eigen::Index>(columns.size()))
    throw ConfigError("norm_rate_table: shape mismatch");
  if (levels < 2) throw ConfigError("norm_rate_table: needs at least two levels");

  RateTable t;
  t.h = h;
  t.columns = columns;
  t.values = values;
  t.step_rates.resize(levels - 1, values.cols());
  for (Eigen::Index l = 0; l + 1 < levels; ++l)
    for (Eigen::Index q = 0; q < values.cols(); ++q)
      t.step_rates(l, q) = pair_rate(h[static_cast<size_t>(l)], values(l, q),
                                     h[static_cast<size_t>(l) + 1], values(l + 1, q));
  for (Eigen::Index q = 0; q < values.cols(); ++q) {
    std::vector<Real> e(static_cast<size_t>(levels));
    for (Eigen::Index l = 0; l < levels; ++l) e[static_cast<size_t>(l)] = values(l, q);
    t.overall.push_back(lsq_slope(h, e));
  }
  return t;
}

Real lsq_slope(const std::vector<Real>& h, const std::vector<Real>& e) {
  if (h.size() != e.size() || h.size() < 2) return kNaN;
  const size_t n = h.size();
  std::vector<Real> x(n), y(n);
  for (size_t i = 0; i < n; ++i) {
    if (!(h[i] > 0.0) || !(e[i] > 0.0)) return kNaN;
    x[i] = std::log(h[i]);
    y[i] = std::log(e[i]);
  }
  Real xm = 0.0, ym = 0.0;
  for (size_t i = 0; i < n; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= static_cast<Real>(n);
  ym /= static_cast<Real>(n);
  Real num = 0.0, den = 0.0;
  for (size_t i = 0; i < n; ++i) {
    num += (x[i] - xm) * (y[i] - ym);
    den += (x[i] - xm) * (x[i] - xm);
  }
  return den > 0.0 ? num / den : kNaN;
}

Real pair_rate(Real h0, Real e0, Real h1, Real e1) {
  if (!(h0 > 0.0) || !(h1 > 0.0) || !(e0 > 0.0) || !(e1 > 0.0) || h0 == h1) return kNaN;
  return std::log(e0 / e1) / std::log(h0 / h1);
}

}  // namespace rrm
