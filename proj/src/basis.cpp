#include <rrm/basis.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace rrm {

namespace {

// Monomial exponents spanning P2 + {s^3, t^3}.
constexpr int kExpS[8] = {0, 1, 0, 2, 1, 0, 3, 0};
constexpr int kExpT[8] = {0, 0, 1, 0, 1, 2, 0, 3};

Real mono_value(int j, Real s, Real t) {
  return std::pow(s, kExpS[j]) * std::pow(t, kExpT[j]);
}

}  // namespace

Matrix8 reference_dof_matrix() {
  Matrix8 g;
  const Real vs[4][2] = {{0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, 0.0}};
  for (int j = 0; j < 8; ++j) {
    const int a = kExpS[j], b = kExpT[j];
    for (int i = 0; i < 4; ++i) g(i, j) = mono_value(j, vs[i][0], vs[i][1]);
    // Mean of d/ds over the edges s=0 and s=1: a * s^(a-1) * mean(t^b).
    g(4, j) = (a == 1) ? 1.0 / (b + 1) : 0.0;
    g(6, j) = (a >= 1) ? Real(a) / (b + 1) : 0.0;
    // Mean of d/dt over the edges t=1 and t=0.
    g(5, j) = (b >= 1) ? Real(b) / (a + 1) : 0.0;
    g(7, j) = (b == 1) ? 1.0 / (a + 1) : 0.0;
  }
  return g;
}

Matrix8 reference_shapes() {
  static const Matrix8 shapes = [] {
    const Matrix8 g = reference_dof_matrix();
    Eigen::FullPivLU<Matrix8> lu(g);
    if (!lu.isInvertible())
      throw ConstructionError("reference_shapes: duality system is singular");
    const Matrix8 c = lu.inverse();
    if ((g * c - Matrix8::Identity()).cwiseAbs().maxCoeff() > 1e-13)
      throw ConstructionError("reference_shapes: duality residual too large");
    return c;
  }();
  return shapes;
}

PatchDofValues patch_dof_tables(const PatchGeometry& pg) {
  const Real gx = pg.gamma_x(), gy = pg.gamma_y(), w = pg.v11();
  const Real L0 = pg.L[0], L2 = pg.L[2], H0 = pg.H[0], H2 = pg.H[2];
  PatchDofValues d;
  d.v[0][0] = w;
  d.v[1][0] = gx * w;
  d.v[0][1] = gy * w;
  d.v[1][1] = gx * gy * w;
  d.u[0][0] = w / H0;
  d.u[1][0] = (1.0 + gx) * w / H0;
  d.u[2][0] = gx * w / H0;
  d.u[0][1] = -gy * w / H2;
  d.u[1][1] = -(1.0 + gx) * gy * w / H2;
  d.u[2][1] = -gx * gy * w / H2;
  d.z[0][0] = w / L0;
  d.z[1][0] = -gx * w / L2;
  d.z[0][1] = (1.0 + gy) * w / L0;
  d.z[1][1] = -(1.0 + gy) * gx * w / L2;
  d.z[0][2] = gy * w / L0;
  d.z[1][2] = -gx * gy * w / L2;
  return d;
}

PatchBasis build_patch_basis(const PatchGeometry& pg) {
  const Matrix8 shapes = reference_shapes();
  const PatchDofValues t = patch_dof_tables(pg);

  PatchBasis phi;
  phi.geom = pg;
  for (int m = 0; m < 4; ++m) {
    phi.xs[m] = pg.xs(m);
    phi.ys[m] = pg.ys(m);
  }

  // Vertex value at patch grid point (m, n); zero on the patch boundary.
  const auto vertex = [&](int m, int n) -> Real {
    return (m >= 1 && m <= 2 && n >= 1 && n <= 2) ? t.v[m - 1][n - 1] : 0.0;
  };
  // d/dy mean on the horizontal edge of column c at grid line n.
  const auto umean = [&](int c, int n) -> Real {
    return (n >= 1 && n <= 2) ? t.u[c][n - 1] : 0.0;
  };
  // d/dx mean on the vertical edge at grid line m in row r.
  const auto zmean = [&](int m, int r) -> Real {
    return (m >= 1 && m <= 2) ? t.z[m - 1][r] : 0.0;
  };

  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const Real lx = pg.L[c], ly = pg.H[r];
      Coeff8 dof;
      dof[0] = vertex(c, r);
      dof[1] = vertex(c, r + 1);
      dof[2] = vertex(c + 1, r + 1);
      dof[3] = vertex(c + 1, r);
      dof[4] = zmean(c, r) * lx;
      dof[5] = umean(c, r + 1) * ly;
      dof[6] = zmean(c + 1, r) * lx;
      dof[7] = umean(c, r) * ly;
      const Coeff8 coef = shapes * dof;
      const Real scale = std::max(1.0, coef.cwiseAbs().maxCoeff());
      if (std::abs(coef[6]) > 1e-10 * scale || std::abs(coef[7]) > 1e-10 * scale)
        throw ConstructionError("build_patch_basis: cubic terms do not cancel");
      phi.piece[static_cast<size_t>(3 * r + c)] = coef.head<6>();
    }
  }
  return phi;
}

int PatchBasis::locate(Real x, Real y) const {
  if (!contains(x, y)) return -1;
  const auto side = [](const Real* lines, Real p) {
    int k = static_cast<int>(std::lower_bound(lines, lines + 4, p) - lines) - 1;
    return std::clamp(k, 0, 2);
  };
  return 3 * side(ys, y) + side(xs, x);
}

Real PatchBasis::value(Real x, Real y) const {
  const int k = locate(x, y);
  if (k < 0) return 0.0;
  const int r = k / 3, c = k % 3;
  const Real s = (x - xs[c]) / geom.L[c];
  const Real t = (y - ys[r]) / geom.H[r];
  return eval6(piece[static_cast<size_t>(k)], s, t);
}

Vec2 PatchBasis::gradient(Real x, Real y) const {
  const int k = locate(x, y);
  if (k < 0) return Vec2::Zero();
  const int r = k / 3, c = k % 3;
  const Real s = (x - xs[c]) / geom.L[c];
  const Real t = (y - ys[r]) / geom.H[r];
  return grad6(piece[static_cast<size_t>(k)], s, t, geom.L[c], geom.H[r]);
}

Hessian PatchBasis::hessian(Real x, Real y) const {
  const int k = locate(x, y);
  if (k < 0) return Hessian::Zero();
  const int r = k / 3, c = k % 3;
  return hess6(piece[static_cast<size_t>(k)], geom.L[c], geom.H[r]);
}

PatchDofValues dof_values(const PatchBasis& phi) {
  PatchDofValues d;
  // Vertex values from the piece with the vertex at its upper-right corner.
  for (int m = 1; m <= 2; ++m)
    for (int n = 1; n <= 2; ++n) {
      const Coeff6& p = phi.piece[static_cast<size_t>(3 * (n - 1) + (m - 1))];
      d.v[m - 1][n - 1] = eval6(p, 1.0, 1.0);
    }
  // d/dy means over horizontal edges: the edge at line n is the top edge of
  // the piece below it. Mean over s of (c2 + c4 s + 2 c5 t)/ly at t = 1.
  for (int c = 0; c < 3; ++c)
    for (int n = 1; n <= 2; ++n) {
      const Coeff6& p = phi.piece[static_cast<size_t>(3 * (n - 1) + c)];
      d.u[c][n - 1] = (p[2] + 0.5 * p[4] + 2.0 * p[5]) / phi.geom.H[n - 1];
    }
  // d/dx means over vertical edges: the edge at line m is the right edge of
  // the piece left of it. Mean over t of (c1 + 2 c3 s + c4 t)/lx at s = 1.
  for (int m = 1; m <= 2; ++m)
    for (int r = 0; r < 3; ++r) {
      const Coeff6& p = phi.piece[static_cast<size_t>(3 * r + (m - 1))];
      d.z[m - 1][r] = (p[1] + 2.0 * p[3] + 0.5 * p[4]) / phi.geom.L[m - 1];
    }
  return d;
}

namespace {

BasisSet build_basis(const ExtendedGrid& ext, bool interior_only) {
  BasisSet bs;
  bs.ext = &ext;
  bs.interior_only = interior_only;
  bs.center_pos.assign(ext.kind.size(), -1);

  if (interior_only) {
    for (int id : ext.topo.interior_cells) {
      const int i = id % ext.base.nx(), j = id / ext.base.nx();
      const int eid = ext.to_extended(i, j);
      bs.center_pos[static_cast<size_t>(eid)] = static_cast<int>(bs.centers.size());
      bs.centers.push_back(eid);
    }
  } else {
    bs.centers = ext.centers;
    bs.center_pos = ext.center_pos;
  }

  bs.phi.reserve(bs.centers.size());
  for (int eid : bs.centers) {
    const int ie = eid % ext.enx(), je = eid / ext.enx();
    bs.phi.push_back(build_patch_basis(ext.patch(ie, je)));
  }

  bs.cover.assign(static_cast<size_t>(ext.base.nx()) * static_cast<size_t>(ext.base.ny()), {});
  for (int j = 0; j < ext.base.ny(); ++j)
    for (int i = 0; i < ext.base.nx(); ++i) {
      if (!ext.base.is_active(i, j)) continue;
      auto& cov = bs.cover[static_cast<size_t>(ext.base.cell_id(i, j))];
      const int ie = i + ExtendedGrid::kOffset, je = j + ExtendedGrid::kOffset;
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (!ext.in_range(ie + di, je + dj)) continue;
          const int pos = bs.center_pos[static_cast<size_t>(ext.ecell_id(ie + di, je + dj))];
          if (pos < 0) continue;
          cov.index[static_cast<size_t>(cov.count)] = pos;
          cov.piece[static_cast<size_t>(cov.count)] = 3 * (1 - dj) + (1 - di);
          ++cov.count;
        }
    }
  return bs;
}

}  // namespace

BasisSet build_interior_basis(const ExtendedGrid& ext) { return build_basis(ext, true); }

BasisSet build_extended_basis(const ExtendedGrid& ext) { return build_basis(ext, false); }

Coeff6 combine_on_cell(const BasisSet& bs, const Vector& coeffs, int i, int j) {
  Coeff6 out = Coeff6::Zero();
  const auto& cov = bs.cover_of(i, j);
  for (int k = 0; k < cov.count; ++k) {
    const int b = cov.index[static_cast<size_t>(k)];
    out += coeffs[b] * bs.phi[static_cast<size_t>(b)].piece[static_cast<size_t>(cov.piece[static_cast<size_t>(k)])];
  }
  return out;
}

void dump_basis(std::ostream& os, const PatchBasis& phi) {
  os.precision(15);
  os << "patch x: " << phi.xs[0] << ' ' << phi.xs[1] << ' ' << phi.xs[2] << ' ' << phi.xs[3]
     << "\npatch y: " << phi.ys[0] << ' ' << phi.ys[1] << ' ' << phi.ys[2] << ' ' << phi.ys[3]
     << "\n";
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      os << "cell(" << r << ',' << c << "):";
      for (int k = 0; k < 6; ++k) os << ' ' << phi.piece[static_cast<size_t>(3 * r + c)][k];
      os << '\n';
    }
}

}  // namespace rrm
