#pragma once

#include <rrm/analysis.hpp>
#include <rrm/assembly.hpp>
#include <rrm/basis.hpp>
#include <rrm/fields.hpp>
#include <rrm/grid.hpp>
#include <rrm/interpolation.hpp>
#include <rrm/linalg.hpp>

#include <memory>
#include <string>
#include <vector>

namespace rrm {

enum class GridKind { Uniform, Graded };

/// Which experiment a perturbation run reproduces: a manufactured solution
/// with the right-hand side derived from it, or the boundary-layer study
/// measured against the reduced-limit solution.
enum class StudyKind { Manufactured, BoundaryLayer };

struct BetaSpec {
  bool affine = true;   // 8 + x - y; otherwise the constant below
  Real constant = 8.0;
  CoefficientField make() const;
  std::string label() const;
};

/// Grid, topology, virtual extension, and basis with stable addresses.
struct Discretization {
  std::unique_ptr<ExtendedGrid> ext;
  BasisSet basis;
  Real h = 0.0;

  const Grid& grid() const { return ext->base; }
  int size() const { return basis.size(); }
};

/// Build the full chain for one mesh. An interior basis with zero functions
/// raises ConfigError.
Discretization discretize(const Domain& domain, GridKind kind, int n, Real theta = 0.4,
                          Real gamma0 = 8.0, bool extended = false);

struct PerturbationConfig {
  Domain domain = Domain::unit_square();
  GridKind grid = GridKind::Uniform;
  Real theta = 0.4;
  std::vector<int> levels;  // cells per unit length, strictly ascending
  std::vector<Real> eps_list = {1.0};
  BetaSpec beta;
  StudyKind study = StudyKind::Manufactured;
  Real gamma0 = 8.0;
  int max_n = 128;  // desk-scale cap on n
};

struct PerturbationRun {
  Real eps = 1.0;
  std::vector<ErrorReport> reports;  // one per level
  RateTable rates;                   // err_h1, err_h2, energy, rel_energy
};

struct PerturbationResult {
  std::vector<Real> h;  // per level
  std::vector<PerturbationRun> runs;
};

/// For each (level, eps): assemble eps^2 * (beta-weighted bi-Laplacian form)
/// + gradient form, solve, and measure errors against the study's reference
/// solution. Rates are per eps across levels.
PerturbationResult run_perturbation(const PerturbationConfig& cfg);

struct TransmissionConfig {
  Domain domain = Domain::unit_square();
  GridKind grid = GridKind::Uniform;
  Real theta = 0.4;
  std::vector<int> levels;
  BetaSpec beta;  // must stay above 1 on the domain
  int k = 6;
  Real gamma0 = 8.0;
  int max_n = 64;  // desk-scale cap on n
  EigenOptions eigen;
};

struct TransmissionResult {
  std::vector<int> n;
  std::vector<Real> h;
  std::vector<std::vector<Real>> lambdas;  // [level][index], ascending
  RateTable rates;                         // filled when >= 3 levels
  bool rates_defined = false;
};

/// Per level: assemble the quadratic pencil (bi-Laplacian weighted by
/// 1/(beta-1), the symmetrized mixed form, mass weighted by beta/(beta-1)),
/// solve for the k smallest admissible eigenvalues, and tabulate rates.
TransmissionResult run_transmission(const TransmissionConfig& cfg);

/// One grid configuration of the standard verification battery.
struct GridCase {
  std::string label;
  Domain domain;
  GridKind kind = GridKind::Uniform;
  int n = 8;
  Real theta = 0.4;
};

/// uniform/graded x unit-square/l-shape at n in {8, 16}.
std::vector<GridCase> standard_battery();

Discretization discretize_case(const GridCase& gc, bool extended = false);

/// Max relative entrywise deviation between the Hessian-pairing and the
/// unit-weight Laplacian-pairing stiffness matrices.
Real grisvard_deviation(const GridCase& gc);

/// Max cellwise coefficient residual of the extended interpolant over the six
/// quadratic monomials, normalized per cell.
Real reproduction_residual(const GridCase& gc);

/// Residual of the alternating-sign area-weighted basis combination that must
/// vanish identically, relative to the largest coefficient used.
Real checkerboard_residual(const GridCase& gc);

struct InterpolationStudy {
  std::vector<Real> h;
  Matrix errors;    // one row per level: broken norms k = 0, 1, 2
  RateTable rates;  // columns error_k0, error_k1, error_k2
};

/// Interior interpolation of (sin(pi x) sin(pi y))^2 across mesh levels.
InterpolationStudy interpolation_study(const Domain& domain, GridKind kind,
                                       const std::vector<int>& levels, Real theta = 0.4);

}  // namespace rrm
