#include <rrm/grid.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace rrm {

Real Domain::area() const {
  switch (kind) {
    case DomainKind::UnitSquare: return 1.0;
    case DomainKind::Square: return extent * extent;
    case DomainKind::LShape: return 3.0;
  }
  return 0.0;
}

bool Domain::contains_center(Real x, Real y) const {
  if (x <= 0.0 || y <= 0.0 || x >= extent || y >= extent) return false;
  if (kind == DomainKind::LShape && x > 1.0 && y > 1.0) return false;
  return true;
}

const char* Domain::kind_name() const {
  switch (kind) {
    case DomainKind::UnitSquare: return "unit-square";
    case DomainKind::Square: return "square";
    case DomainKind::LShape: return "l-shape";
  }
  return "?";
}

Real Grid::mesh_size() const {
  Real h = 0.0;
  for (int j = 0; j < ny(); ++j)
    for (int i = 0; i < nx(); ++i)
      if (is_active(i, j)) h = std::max(h, std::max(hx(i), hy(j)));
  return h;
}

Real Grid::regularity_ratio() const {
  Real ratio = 0.0;
  for (int j = 0; j < ny(); ++j)
    for (int i = 0; i < nx(); ++i)
      if (is_active(i, j)) {
        const Real a = std::max(hx(i), hy(j));
        const Real b = std::min(hx(i), hy(j));
        ratio = std::max(ratio, a / (0.5 * b));
      }
  return ratio;
}

int Grid::active_count() const {
  int n = 0;
  for (uint8_t a : active) n += a != 0;
  return n;
}

namespace {

void fill_mask(Grid& grid) {
  grid.active.assign(static_cast<size_t>(grid.nx()) * static_cast<size_t>(grid.ny()), 0);
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      if (grid.domain.contains_center(grid.cx(i), grid.cy(j)))
        grid.active[static_cast<size_t>(grid.cell_id(i, j))] = 1;
}

void check_lines(const std::vector<Real>& lines, const char* what) {
  if (lines.size() < 2) throw ConfigError(std::string(what) + ": need at least two lines");
  for (size_t k = 1; k < lines.size(); ++k)
    if (!(lines[k] > lines[k - 1]))
      throw ConfigError(std::string(what) + ": lines must be strictly ascending");
}

bool vertex_interior(const Grid& grid, int iv, int jv) {
  return grid.is_active(iv - 1, jv - 1) && grid.is_active(iv, jv - 1) &&
         grid.is_active(iv - 1, jv) && grid.is_active(iv, jv);
}

}  // namespace

Grid build_uniform_grid(const Domain& domain, int n) {
  if (n < 4) throw ConfigError("build_uniform_grid: need n >= 4 cells per unit length");
  Grid grid;
  grid.domain = domain;
  const int total = static_cast<int>(std::lround(domain.extent * n));
  grid.x_lines.resize(static_cast<size_t>(total) + 1);
  for (int k = 0; k <= total; ++k)
    grid.x_lines[static_cast<size_t>(k)] = domain.extent * k / total;
  grid.y_lines = grid.x_lines;
  fill_mask(grid);
  return grid;
}

Grid build_graded_grid(const Domain& domain, int n, Real theta) {
  if (n < 2) throw ConfigError("build_graded_grid: need base resolution n >= 2");
  if (!(theta > 0.0 && theta < 1.0))
    throw ConfigError("build_graded_grid: split ratio must lie in (0,1)");
  Grid grid;
  grid.domain = domain;
  const int total = static_cast<int>(std::lround(domain.extent * n));
  grid.x_lines.reserve(2 * static_cast<size_t>(total) + 1);
  for (int k = 0; k < total; ++k) {
    grid.x_lines.push_back(domain.extent * k / total);
    grid.x_lines.push_back(domain.extent * (k + theta) / total);
  }
  grid.x_lines.push_back(domain.extent);
  grid.y_lines = grid.x_lines;
  fill_mask(grid);
  return grid;
}

Grid make_tensor_grid(const Domain& domain, std::vector<Real> x_lines, std::vector<Real> y_lines) {
  check_lines(x_lines, "x_lines");
  check_lines(y_lines, "y_lines");
  Grid grid;
  grid.domain = domain;
  grid.x_lines = std::move(x_lines);
  grid.y_lines = std::move(y_lines);
  fill_mask(grid);
  return grid;
}

Topology classify(const Grid& grid, Real gamma0) {
  Topology topo;
  const int nx = grid.nx(), ny = grid.ny();

  Real area = 0.0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      if (grid.is_active(i, j)) area += grid.hx(i) * grid.hy(j);
  const Real want = grid.domain.area();
  if (std::abs(area - want) > 1e-12 * want)
    throw ConstructionError("classify: active cells do not tile the domain");

  const Real ratio = grid.regularity_ratio();
  if (ratio > gamma0)
    throw ConfigError("classify: regularity ratio " + std::to_string(ratio) +
                      " exceeds the configured bound");

  topo.interior_pos.assign(static_cast<size_t>(nx) * static_cast<size_t>(ny), -1);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if (!grid.is_active(i, j)) continue;
      const bool interior = vertex_interior(grid, i, j) && vertex_interior(grid, i + 1, j) &&
                            vertex_interior(grid, i, j + 1) && vertex_interior(grid, i + 1, j + 1);
      if (interior) {
        topo.interior_pos[static_cast<size_t>(grid.cell_id(i, j))] =
            static_cast<int>(topo.interior_cells.size());
        topo.interior_cells.push_back(grid.cell_id(i, j));
      } else {
        topo.boundary_cells.push_back(grid.cell_id(i, j));
      }
    }
  topo.n_interior = static_cast<int>(topo.interior_cells.size());

  // Corner nodes: classify boundary vertices by their active incident cells.
  std::vector<std::pair<int, int>> corner_vertices;
  for (int jv = 0; jv <= ny; ++jv)
    for (int iv = 0; iv <= nx; ++iv) {
      const bool c00 = grid.is_active(iv - 1, jv - 1), c10 = grid.is_active(iv, jv - 1);
      const bool c01 = grid.is_active(iv - 1, jv), c11 = grid.is_active(iv, jv);
      const int count = int(c00) + int(c10) + int(c01) + int(c11);
      if (count == 0 || count == 4) continue;
      const Vec2 p{grid.x_lines[static_cast<size_t>(iv)], grid.y_lines[static_cast<size_t>(jv)]};
      if (count == 1) {
        topo.convex_corners.push_back(p);
        corner_vertices.emplace_back(iv, jv);
      } else if (count == 3) {
        topo.concave_corners.push_back(p);
        corner_vertices.emplace_back(iv, jv);
      } else if ((c00 && c11 && !c10 && !c01) || (c10 && c01 && !c00 && !c11)) {
        throw ConstructionError("classify: domain pinches at a vertex");
      }
    }

  // No two corner nodes may share a cell.
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if (!grid.is_active(i, j)) continue;
      int corners_here = 0;
      for (const auto& [iv, jv] : corner_vertices)
        if ((iv == i || iv == i + 1) && (jv == j || jv == j + 1)) ++corners_here;
      if (corners_here > 1)
        throw ConfigError("classify: two corner nodes share one cell; refine the grid");
    }

  return topo;
}

PatchGeometry patch3x3(const Grid& grid, const Topology& topo, int i, int j) {
  if (!grid.in_range(i, j) ||
      topo.interior_pos[static_cast<size_t>(grid.cell_id(i, j))] < 0)
    throw ConfigError("patch3x3: cell is not interior");
  PatchGeometry pg;
  for (int d = 0; d < 3; ++d) {
    pg.L[d] = grid.hx(i - 1 + d);
    pg.H[d] = grid.hy(j - 1 + d);
  }
  pg.x0 = grid.x_lines[static_cast<size_t>(i) - 1];
  pg.y0 = grid.y_lines[static_cast<size_t>(j) - 1];
  return pg;
}

PatchGeometry ExtendedGrid::patch(int ie, int je) const {
  if (ie < 1 || ie > enx() - 2 || je < 1 || je > eny() - 2)
    throw ConfigError("ExtendedGrid::patch: patch sticks out of the extension");
  PatchGeometry pg;
  for (int d = 0; d < 3; ++d) {
    pg.L[d] = ehx(ie - 1 + d);
    pg.H[d] = ehy(je - 1 + d);
  }
  pg.x0 = ex_lines[static_cast<size_t>(ie) - 1];
  pg.y0 = ey_lines[static_cast<size_t>(je) - 1];
  return pg;
}

ExtendedGrid extend_grid(const Grid& grid, Topology topo) {
  ExtendedGrid ext;
  ext.base = grid;
  ext.topo = std::move(topo);

  const auto extend_lines = [](const std::vector<Real>& lines) {
    const size_t n = lines.size();
    const Real h_lo = lines[1] - lines[0];
    const Real h_hi = lines[n - 1] - lines[n - 2];
    std::vector<Real> out;
    out.reserve(n + 4);
    out.push_back(lines[0] - 2.0 * h_lo);
    out.push_back(lines[0] - h_lo);
    out.insert(out.end(), lines.begin(), lines.end());
    out.push_back(lines[n - 1] + h_hi);
    out.push_back(lines[n - 1] + 2.0 * h_hi);
    return out;
  };
  ext.ex_lines = extend_lines(grid.x_lines);
  ext.ey_lines = extend_lines(grid.y_lines);

  const int enx = ext.enx(), eny = ext.eny();
  ext.kind.assign(static_cast<size_t>(enx) * static_cast<size_t>(eny), CellKind::Outside);
  constexpr int off = ExtendedGrid::kOffset;

  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      if (grid.is_active(i, j))
        ext.kind[static_cast<size_t>(ext.ecell_id(i + off, j + off))] = CellKind::Real;

  const auto has_neighbor = [&](int ie, int je, CellKind k) {
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        if (di == 0 && dj == 0) continue;
        if (ext.kind_at(ie + di, je + dj) == k) return true;
      }
    return false;
  };

  for (int je = 0; je < eny; ++je)
    for (int ie = 0; ie < enx; ++ie)
      if (ext.kind_at(ie, je) == CellKind::Outside && has_neighbor(ie, je, CellKind::Real))
        ext.kind[static_cast<size_t>(ext.ecell_id(ie, je))] = CellKind::Added;

  for (int je = 0; je < eny; ++je)
    for (int ie = 0; ie < enx; ++ie)
      if (ext.kind_at(ie, je) == CellKind::Outside && has_neighbor(ie, je, CellKind::Added))
        ext.kind[static_cast<size_t>(ext.ecell_id(ie, je))] = CellKind::PatchOnly;

  ext.center_pos.assign(ext.kind.size(), -1);
  for (int je = 0; je < eny; ++je)
    for (int ie = 0; ie < enx; ++ie) {
      const CellKind k = ext.kind_at(ie, je);
      if (k == CellKind::Real || k == CellKind::Added) {
        ext.center_pos[static_cast<size_t>(ext.ecell_id(ie, je))] =
            static_cast<int>(ext.centers.size());
        ext.centers.push_back(ext.ecell_id(ie, je));
      }
    }

  // Every center's patch must be fully backed by extension cells, and every
  // base cell must sit in exactly nine supports.
  for (int id : ext.centers) {
    const int ie = id % enx, je = id / enx;
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di)
        if (ext.kind_at(ie + di, je + dj) == CellKind::Outside)
          throw ConstructionError("extend_grid: incomplete patch around a center");
  }
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      if (!grid.is_active(i, j)) continue;
      int covered = 0;
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          const CellKind k = ext.kind_at(i + off + di, j + off + dj);
          if (k == CellKind::Real || k == CellKind::Added) ++covered;
        }
      if (covered != 9)
        throw ConstructionError("extend_grid: base cell not covered by nine supports");
    }

  return ext;
}

std::vector<int> delta_neighborhood(const ExtendedGrid& ext, int i, int j) {
  if (!ext.base.in_range(i, j)) throw ConfigError("delta_neighborhood: cell out of range");
  const int ie = i + ExtendedGrid::kOffset, je = j + ExtendedGrid::kOffset;
  std::set<int> cells;
  for (int dj = -1; dj <= 1; ++dj)
    for (int di = -1; di <= 1; ++di) {
      const CellKind k = ext.kind_at(ie + di, je + dj);
      if (k != CellKind::Real && k != CellKind::Added) continue;
      for (int pj = -1; pj <= 1; ++pj)
        for (int pi = -1; pi <= 1; ++pi)
          cells.insert(ext.ecell_id(ie + di + pi, je + dj + pj));
    }
  return {cells.begin(), cells.end()};
}

void save_grid(std::ostream& os, const Grid& grid) {
  os.precision(17);
  os << grid.nx() << ' ' << grid.ny() << '\n';
  for (size_t k = 0; k < grid.x_lines.size(); ++k)
    os << (k ? " " : "") << grid.x_lines[k];
  os << '\n';
  for (size_t k = 0; k < grid.y_lines.size(); ++k)
    os << (k ? " " : "") << grid.y_lines[k];
  os << '\n';
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i)
      os << (i ? " " : "") << (grid.is_active(i, j) ? 1 : 0);
    os << '\n';
  }
}

Grid load_grid(std::istream& is) {
  int nx = 0, ny = 0;
  if (!(is >> nx >> ny) || nx < 1 || ny < 1) throw ConfigError("load_grid: bad header");
  Grid grid;
  grid.x_lines.resize(static_cast<size_t>(nx) + 1);
  grid.y_lines.resize(static_cast<size_t>(ny) + 1);
  for (auto& v : grid.x_lines)
    if (!(is >> v)) throw ConfigError("load_grid: bad x lines");
  for (auto& v : grid.y_lines)
    if (!(is >> v)) throw ConfigError("load_grid: bad y lines");
  check_lines(grid.x_lines, "x_lines");
  check_lines(grid.y_lines, "y_lines");
  grid.active.assign(static_cast<size_t>(nx) * static_cast<size_t>(ny), 0);
  bool all = true;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      int a = 0;
      if (!(is >> a)) throw ConfigError("load_grid: bad mask");
      grid.active[static_cast<size_t>(grid.cell_id(i, j))] = a ? 1 : 0;
      all = all && a;
    }
  const Real extent = grid.x_lines.back() - grid.x_lines.front();
  if (all)
    grid.domain = std::abs(extent - 1.0) < 1e-12 ? Domain::unit_square() : Domain::square(extent);
  else
    grid.domain = Domain::l_shape();
  return grid;
}

}  // namespace rrm
