#pragma once

#include <rrm/types.hpp>

#include <iosfwd>
#include <vector>

namespace rrm {

enum class DomainKind { UnitSquare, Square, LShape };

/// Axis-aligned domain: (0,1)^2, (0,a)^2, or the L-shape (0,2)^2 \ [1,2]^2.
struct Domain {
  DomainKind kind = DomainKind::UnitSquare;
  Real extent = 1.0;  // side length; fixed to 1 for UnitSquare and 2 for LShape

  static Domain unit_square() { return {DomainKind::UnitSquare, 1.0}; }
  static Domain square(Real a) { return {DomainKind::Square, a}; }
  static Domain l_shape() { return {DomainKind::LShape, 2.0}; }

  Real area() const;
  /// Does the domain contain the open cell with this center?
  bool contains_center(Real x, Real y) const;
  const char* kind_name() const;
};

/// Tensor-product grid over the domain's bounding box with an active-cell
/// mask. Cell (i, j) spans [x_lines[i], x_lines[i+1]] x [y_lines[j], y_lines[j+1]];
/// linear ids are j * nx + i.
struct Grid {
  Domain domain;
  std::vector<Real> x_lines;
  std::vector<Real> y_lines;
  std::vector<uint8_t> active;

  int nx() const { return static_cast<int>(x_lines.size()) - 1; }
  int ny() const { return static_cast<int>(y_lines.size()) - 1; }
  int cell_id(int i, int j) const { return j * nx() + i; }
  bool in_range(int i, int j) const { return i >= 0 && i < nx() && j >= 0 && j < ny(); }
  bool is_active(int i, int j) const {
    return in_range(i, j) && active[static_cast<size_t>(cell_id(i, j))] != 0;
  }
  Real hx(int i) const { return x_lines[static_cast<size_t>(i) + 1] - x_lines[static_cast<size_t>(i)]; }
  Real hy(int j) const { return y_lines[static_cast<size_t>(j) + 1] - y_lines[static_cast<size_t>(j)]; }
  Real cx(int i) const { return 0.5 * (x_lines[static_cast<size_t>(i)] + x_lines[static_cast<size_t>(i) + 1]); }
  Real cy(int j) const { return 0.5 * (y_lines[static_cast<size_t>(j)] + y_lines[static_cast<size_t>(j) + 1]); }

  /// Largest cell edge over active cells (the mesh size parameter).
  Real mesh_size() const;
  /// max over active cells of (longest side) / (half the shortest side).
  Real regularity_ratio() const;
  int active_count() const;
};

/// Cell partition and boundary structure derived from the mask.
struct Topology {
  /// Interior cells (no vertex on the boundary), ascending cell id. This is
  /// the basis ordering for the solve space.
  std::vector<int> interior_cells;
  std::vector<int> boundary_cells;
  /// cell id -> position in interior_cells, or -1.
  std::vector<int> interior_pos;
  /// Corner vertices of the domain polygon, as (x, y).
  std::vector<Vec2> convex_corners;
  std::vector<Vec2> concave_corners;
  int n_interior = 0;
};

/// Status of a cell of the extended tensor grid.
enum class CellKind : uint8_t {
  Outside,    // present in the extended tensor product but unused
  PatchOnly,  // completes the patch of an added center, carries no function
  Added,      // virtual cell carrying a basis function
  Real        // active cell of the base grid
};

/// The six patch lengths around a center cell: L[0], L[1], L[2] are the widths
/// of the left/center/right columns; H likewise for rows.
struct PatchGeometry {
  Real L[3];
  Real H[3];
  Real x0 = 0.0;  // lower-left corner of the patch
  Real y0 = 0.0;

  Real gamma_x() const { return (1.0 + L[1] / L[0]) / (1.0 + L[1] / L[2]); }
  Real gamma_y() const { return (1.0 + H[1] / H[0]) / (1.0 + H[1] / H[2]); }
  /// Normalization value of the basis function at the patch's lower-left
  /// interior vertex.
  Real v11() const { return L[0] / (L[0] + L[1]) * (H[0] / (H[0] + H[1])); }
  Real xs(int m) const { return m == 0 ? x0 : x0 + (m == 1 ? L[0] : (m == 2 ? L[0] + L[1] : L[0] + L[1] + L[2])); }
  Real ys(int n) const { return n == 0 ? y0 : y0 + (n == 1 ? H[0] : (n == 2 ? H[0] + H[1] : H[0] + H[1] + H[2])); }
};

/// Base grid plus two rings of virtual cells: one ring of added centers so
/// every base cell is covered by nine patch supports, and one further ring of
/// patch-completion cells. Extended cell (ie, je) = base cell (ie-2, je-2).
struct ExtendedGrid {
  Grid base;
  Topology topo;
  std::vector<Real> ex_lines;
  std::vector<Real> ey_lines;
  std::vector<CellKind> kind;
  /// Extended ids of all cells carrying a basis function (Real + Added), ascending.
  std::vector<int> centers;
  /// extended id -> position in centers, or -1.
  std::vector<int> center_pos;

  static constexpr int kOffset = 2;
  int enx() const { return static_cast<int>(ex_lines.size()) - 1; }
  int eny() const { return static_cast<int>(ey_lines.size()) - 1; }
  int ecell_id(int ie, int je) const { return je * enx() + ie; }
  bool in_range(int ie, int je) const { return ie >= 0 && ie < enx() && je >= 0 && je < eny(); }
  CellKind kind_at(int ie, int je) const {
    return in_range(ie, je) ? kind[static_cast<size_t>(ecell_id(ie, je))] : CellKind::Outside;
  }
  Real ehx(int ie) const { return ex_lines[static_cast<size_t>(ie) + 1] - ex_lines[static_cast<size_t>(ie)]; }
  Real ehy(int je) const { return ey_lines[static_cast<size_t>(je) + 1] - ey_lines[static_cast<size_t>(je)]; }
  int to_extended(int i, int j) const { return ecell_id(i + kOffset, j + kOffset); }
  /// Patch geometry around any non-boundary-of-extension cell.
  PatchGeometry patch(int ie, int je) const;
};

/// Uniform grid with n cells per unit length. Requires n >= 4.
Grid build_uniform_grid(const Domain& domain, int n);

/// Graded grid: each cell of the uniform n-grid is split 2x2 at relative
/// offset theta in both axes. Requires n >= 2 and theta in (0,1).
Grid build_graded_grid(const Domain& domain, int n, Real theta);

/// Tensor grid from explicit lines (unit tests and fixtures).
Grid make_tensor_grid(const Domain& domain, std::vector<Real> x_lines, std::vector<Real> y_lines);

/// Classify cells and corners; validates the area, the regularity bound, and
/// the corner-separation assumption (no two corners in one cell).
Topology classify(const Grid& grid, Real gamma0 = 8.0);

/// Patch geometry of an interior cell of the base grid.
PatchGeometry patch3x3(const Grid& grid, const Topology& topo, int i, int j);

/// Extend the classified grid by virtual cells.
ExtendedGrid extend_grid(const Grid& grid, Topology topo);

/// Extended ids of the union of all patches (over centers) containing base
/// cell (i, j); a 5x5 block of 25 cells deep inside a uniform grid.
std::vector<int> delta_neighborhood(const ExtendedGrid& ext, int i, int j);

/// Plain-text serialization: header "nx ny", x_lines, y_lines, mask rows.
void save_grid(std::ostream& os, const Grid& grid);
Grid load_grid(std::istream& is);

}  // namespace rrm
