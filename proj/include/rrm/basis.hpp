#pragma once

#include <rrm/grid.hpp>
#include <rrm/types.hpp>

#include <array>
#include <iosfwd>

namespace rrm {

using Matrix8 = Eigen::Matrix<Real, 8, 8>;

/// DOF-evaluation matrix of the reference element on [0,1]^2: row i is DOF i
/// applied to the monomials {1, s, t, s^2, st, t^2, s^3, t^3}. DOFs are the
/// vertex values at (0,0), (0,1), (1,1), (1,0) followed by the edge means of
/// d/ds on the left edge, d/dt on the top, d/ds on the right, d/dt on the
/// bottom (fixed positive-axis orientation).
Matrix8 reference_dof_matrix();

/// Coefficients of the eight dual shape functions, one per column: the inverse
/// of reference_dof_matrix(), accurate to 1e-13 (checked).
Matrix8 reference_shapes();

/// Nodal values of a patch basis function: vertex values v at the four
/// interior patch vertices, d/dy means u at the horizontal-edge midpoints,
/// d/dx means z at the vertical-edge midpoints (patch-boundary DOFs are zero
/// and not stored). v[m][n] sits at (xs[m+1], ys[n+1]); u[m][n] on the
/// horizontal edge of column m at line ys[n+1]; z[m][n] on the vertical edge
/// at line xs[m+1] in row n.
struct PatchDofValues {
  Real v[2][2];
  Real u[3][2];
  Real z[2][3];
};

/// Closed-form DOF values (including the v11 normalization).
PatchDofValues patch_dof_tables(const PatchGeometry& pg);

/// One patch-supported basis function: nine quadratic pieces over the 3x3
/// patch, indexed 3*row + col from the bottom-left cell.
struct PatchBasis {
  PatchGeometry geom;
  std::array<Coeff6, 9> piece;
  Real xs[4];
  Real ys[4];

  bool contains(Real x, Real y) const {
    return x >= xs[0] && x <= xs[3] && y >= ys[0] && y <= ys[3];
  }
  /// Piece index at (x, y); ties on interfaces go to the lower-index cell.
  /// Returns -1 outside the patch.
  int locate(Real x, Real y) const;
  Real value(Real x, Real y) const;
  Vec2 gradient(Real x, Real y) const;
  Hessian hessian(Real x, Real y) const;
};

/// Build the basis function for a patch. The per-cell combination of
/// reference shapes must come out quadratic; a cubic residual above 1e-10
/// (relative) raises ConstructionError.
PatchBasis build_patch_basis(const PatchGeometry& pg);

/// DOF values read back from the polynomial pieces (vertex values from point
/// evaluation, edge means integrated in closed form).
PatchDofValues dof_values(const PatchBasis& phi);

/// A set of patch basis functions over an extended grid, with per-cell lists
/// of the (at most nine) functions covering each active base cell. The
/// extended grid must outlive the set.
struct BasisSet {
  const ExtendedGrid* ext = nullptr;
  bool interior_only = false;
  /// Extended cell ids of the centers, ascending; this is the basis order.
  std::vector<int> centers;
  /// extended id -> basis index, or -1.
  std::vector<int> center_pos;
  std::vector<PatchBasis> phi;

  struct Cover {
    int count = 0;
    std::array<int, 9> index;  // basis indices
    std::array<int, 9> piece;  // piece of that basis living on this cell
  };
  /// Indexed by base cell id; meaningful for active cells.
  std::vector<Cover> cover;

  int size() const { return static_cast<int>(centers.size()); }
  const Cover& cover_of(int i, int j) const {
    return cover[static_cast<size_t>(ext->base.cell_id(i, j))];
  }
};

/// Basis of the homogeneous solve space: one function per interior cell.
BasisSet build_interior_basis(const ExtendedGrid& ext);
/// Basis over all centers (real and added), used by the extended interpolant.
BasisSet build_extended_basis(const ExtendedGrid& ext);

/// Combined quadratic of sum_k coeffs[k] phi_k restricted to base cell (i, j),
/// in that cell's local coordinates.
Coeff6 combine_on_cell(const BasisSet& bs, const Vector& coeffs, int i, int j);

/// Value / gradient / Hessian of a local quadratic at local (s, t) on a cell
/// of size lx x ly.
inline Real eval6(const Coeff6& c, Real s, Real t) {
  return c[0] + c[1] * s + c[2] * t + c[3] * s * s + c[4] * s * t + c[5] * t * t;
}
inline Vec2 grad6(const Coeff6& c, Real s, Real t, Real lx, Real ly) {
  return {(c[1] + 2.0 * c[3] * s + c[4] * t) / lx, (c[2] + c[4] * s + 2.0 * c[5] * t) / ly};
}
inline Hessian hess6(const Coeff6& c, Real lx, Real ly) {
  return {2.0 * c[3] / (lx * lx), c[4] / (lx * ly), 2.0 * c[5] / (ly * ly)};
}

/// Per-cell coefficient table in plain text (debugging aid).
void dump_basis(std::ostream& os, const PatchBasis& phi);

}  // namespace rrm
