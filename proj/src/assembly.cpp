#include <rrm/assembly.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <ostream>
#include <vector>

namespace rrm {

namespace {

using Local9 = Eigen::Matrix<Real, 9, 9>;

struct CellCtx {
  int i, j;
  Real x0, y0, lx, ly;
  const BasisSet::Cover* cov;
  Coeff6 c[9];  // the covering pieces, in cover order
};

template <class Fn>
void for_each_active_cell(const BasisSet& bs, Fn&& fn) {
  const Grid& g = bs.ext->base;
  CellCtx ctx;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.is_active(i, j)) continue;
      ctx.i = i;
      ctx.j = j;
      ctx.x0 = g.x_lines[static_cast<size_t>(i)];
      ctx.y0 = g.y_lines[static_cast<size_t>(j)];
      ctx.lx = g.hx(i);
      ctx.ly = g.hy(j);
      ctx.cov = &bs.cover_of(i, j);
      for (int a = 0; a < ctx.cov->count; ++a)
        ctx.c[a] = bs.phi[static_cast<size_t>(ctx.cov->index[static_cast<size_t>(a)])]
                       .piece[static_cast<size_t>(ctx.cov->piece[static_cast<size_t>(a)])];
      fn(ctx);
    }
}

SparseMatrix finalize_symmetric(int n, std::vector<Triplet>& trips, const char* what) {
  SparseMatrix m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  SparseMatrix mt = SparseMatrix(m.transpose());
  SparseMatrix diff = m - mt;
  Real asym = 0.0, scale = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      scale = std::max(scale, std::abs(it.value()));
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it)
      asym = std::max(asym, std::abs(it.value()));
  if (asym > 1e-13 * std::max(1.0, scale))
    throw ConstructionError(std::string(what) + ": accumulation lost symmetry");
  m = 0.5 * (m + mt);
  m.makeCompressed();
  return m;
}

Real cell_laplacian(const Coeff6& c, Real lx, Real ly) {
  return 2.0 * c[3] / (lx * lx) + 2.0 * c[5] / (ly * ly);
}

template <class LocalFn>
SparseMatrix assemble_bilinear(const BasisSet& bs, const char* what, LocalFn&& local_fn) {
  std::vector<Triplet> trips;
  trips.reserve(81 * static_cast<size_t>(bs.ext->base.active_count()));
  for_each_active_cell(bs, [&](const CellCtx& ctx) {
    Local9 local = Local9::Zero();
    local_fn(ctx, local);
    for (int a = 0; a < ctx.cov->count; ++a)
      for (int b = 0; b < ctx.cov->count; ++b)
        trips.emplace_back(ctx.cov->index[static_cast<size_t>(a)],
                           ctx.cov->index[static_cast<size_t>(b)], local(a, b));
  });
  return finalize_symmetric(bs.size(), trips, what);
}

}  // namespace

SparseMatrix assemble_hessian_stiffness(const BasisSet& bs) {
  return assemble_bilinear(bs, "assemble_hessian_stiffness", [](const CellCtx& ctx, Local9& local) {
    Hessian h[9];
    for (int a = 0; a < ctx.cov->count; ++a) h[a] = hess6(ctx.c[a], ctx.lx, ctx.ly);
    const Real area = ctx.lx * ctx.ly;
    for (int a = 0; a < ctx.cov->count; ++a)
      for (int b = 0; b < ctx.cov->count; ++b)
        local(a, b) = area * (h[a][0] * h[b][0] + 2.0 * h[a][1] * h[b][1] + h[a][2] * h[b][2]);
  });
}

SparseMatrix assemble_laplace_bilap(const BasisSet& bs, const CoefficientField& beta, int p) {
  const QuadRule2D rule = gauss_rule(p);
  return assemble_bilinear(bs, "assemble_laplace_bilap", [&](const CellCtx& ctx, Local9& local) {
    Real wint = 0.0;
    for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
      const Real bq = beta.value(ctx.x0 + ctx.lx * rule.points(q, 0),
                                 ctx.y0 + ctx.ly * rule.points(q, 1));
      if (!(bq > 0.0))
        throw CoefficientError("assemble_laplace_bilap: coefficient " + beta.name +
                               " is nonpositive at a quadrature node");
      wint += rule.weights[q] * bq;
    }
    wint *= ctx.lx * ctx.ly;
    Real lap[9];
    for (int a = 0; a < ctx.cov->count; ++a) lap[a] = cell_laplacian(ctx.c[a], ctx.lx, ctx.ly);
    for (int a = 0; a < ctx.cov->count; ++a)
      for (int b = 0; b < ctx.cov->count; ++b) local(a, b) = wint * lap[a] * lap[b];
  });
}

SparseMatrix assemble_grad_stiffness(const BasisSet& bs, int p) {
  const QuadRule2D rule = gauss_rule(p);
  return assemble_bilinear(bs, "assemble_grad_stiffness", [&](const CellCtx& ctx, Local9& local) {
    for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
      const Real s = rule.points(q, 0), t = rule.points(q, 1);
      Vec2 g[9];
      for (int a = 0; a < ctx.cov->count; ++a) g[a] = grad6(ctx.c[a], s, t, ctx.lx, ctx.ly);
      for (int a = 0; a < ctx.cov->count; ++a)
        for (int b = 0; b < ctx.cov->count; ++b)
          local(a, b) += rule.weights[q] * g[a].dot(g[b]);
    }
    local *= ctx.lx * ctx.ly;
  });
}

SparseMatrix assemble_mass_weighted(const BasisSet& bs, const CoefficientField& w, int p) {
  const QuadRule2D rule = gauss_rule(p);
  return assemble_bilinear(bs, "assemble_mass_weighted", [&](const CellCtx& ctx, Local9& local) {
    for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
      const Real s = rule.points(q, 0), t = rule.points(q, 1);
      const Real wq = rule.weights[q] * w.value(ctx.x0 + ctx.lx * s, ctx.y0 + ctx.ly * t);
      Real v[9];
      for (int a = 0; a < ctx.cov->count; ++a) v[a] = eval6(ctx.c[a], s, t);
      for (int a = 0; a < ctx.cov->count; ++a)
        for (int b = 0; b < ctx.cov->count; ++b) local(a, b) += wq * v[a] * v[b];
    }
    local *= ctx.lx * ctx.ly;
  });
}

SparseMatrix assemble_mixed_B(const BasisSet& bs, const CoefficientField& beta, int p) {
  const QuadRule2D rule = gauss_rule(p);
  return assemble_bilinear(bs, "assemble_mixed_B", [&](const CellCtx& ctx, Local9& local) {
    Real wv[9] = {};  // int (beta-1)^{-1} v_a over the cell
    Local9 grad = Local9::Zero();
    for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
      const Real s = rule.points(q, 0), t = rule.points(q, 1);
      const Real bq = beta.value(ctx.x0 + ctx.lx * s, ctx.y0 + ctx.ly * t);
      if (!(bq > 1.0))
        throw CoefficientError("assemble_mixed_B: coefficient " + beta.name +
                               " must exceed 1 at every quadrature node");
      const Real wq = rule.weights[q] / (bq - 1.0);
      Vec2 g[9];
      for (int a = 0; a < ctx.cov->count; ++a) {
        wv[a] += wq * eval6(ctx.c[a], s, t);
        g[a] = grad6(ctx.c[a], s, t, ctx.lx, ctx.ly);
      }
      for (int a = 0; a < ctx.cov->count; ++a)
        for (int b = 0; b < ctx.cov->count; ++b)
          grad(a, b) += rule.weights[q] * g[a].dot(g[b]);
    }
    const Real area = ctx.lx * ctx.ly;
    Real lap[9];
    for (int a = 0; a < ctx.cov->count; ++a) lap[a] = cell_laplacian(ctx.c[a], ctx.lx, ctx.ly);
    for (int a = 0; a < ctx.cov->count; ++a)
      for (int b = 0; b < ctx.cov->count; ++b)
        local(a, b) = area * (lap[a] * wv[b] + lap[b] * wv[a] - grad(a, b));
  });
}

Vector assemble_load(const BasisSet& bs, const ScalarField& f, int p) {
  const QuadRule2D rule = gauss_rule(p);
  Vector load = Vector::Zero(bs.size());
  for_each_active_cell(bs, [&](const CellCtx& ctx) {
    Real acc[9] = {};
    for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
      const Real s = rule.points(q, 0), t = rule.points(q, 1);
      const Real fq = rule.weights[q] * f(ctx.x0 + ctx.lx * s, ctx.y0 + ctx.ly * t);
      for (int a = 0; a < ctx.cov->count; ++a) acc[a] += fq * eval6(ctx.c[a], s, t);
    }
    for (int a = 0; a < ctx.cov->count; ++a)
      load[ctx.cov->index[static_cast<size_t>(a)]] += acc[a] * ctx.lx * ctx.ly;
  });
  return load;
}

void export_coo(const SparseMatrix& m, std::ostream& os) {
  os.precision(17);
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

}  // namespace rrm
