#pragma once

#include <rrm/basis.hpp>
#include <rrm/fields.hpp>
#include <rrm/quadrature.hpp>
#include <rrm/types.hpp>

#include <string>
#include <vector>

namespace rrm {

/// Broken-norm errors of a discrete field against an exact one, plus the
/// energy norm sqrt(eps^2 |.|_2h^2 + |.|_1h^2) and its relative version.
struct ErrorReport {
  Real h = 0.0;
  Real eps = 1.0;
  Real err_h1 = 0.0;      // |u - u_h|_{1,h}
  Real err_h2 = 0.0;      // |u - u_h|_{2,h}
  Real energy = 0.0;      // ||u - u_h||_{eps,h}
  Real ref_energy = 0.0;  // ||u||_{eps,h}
  Real rel_energy = 0.0;  // energy / ref_energy (0 when both vanish)
};

/// Per-cell quadrature of the gradient and Hessian errors of the combined
/// discrete field against u, over the active cells.
ErrorReport discrete_solution_error(const ExactField& u, const Vector& coeffs,
                                    const BasisSet& bs, Real eps, int p = kOrderRational);

/// Same computation against the reduced-limit solution.
ErrorReport boundary_layer_error(const ExactField& u0, const Vector& coeffs,
                                 const BasisSet& bs, Real eps, int p = kOrderRational);

/// Values per (mesh level, quantity) with convergence rates. Norm tables
/// carry one step_rates row per adjacent level pair; eigenvalue tables one
/// per consecutive level triple. Undefined rates are NaN.
struct RateTable {
  std::vector<Real> h;  // coarse to fine
  std::vector<std::string> columns;
  Matrix values;
  Matrix step_rates;
  std::vector<Real> overall;  // summary rate per column
};

/// Eigenvalue rates by the three-level difference formula
/// log2(|(v_l - v_{l+1}) / (v_{l+1} - v_{l+2})|); nonmonotone or stagnant
/// triples give NaN. The overall rate uses the three finest levels.
RateTable eigen_rate_table(const std::vector<Real>& h,
                           const std::vector<std::vector<Real>>& lams);

/// Norm-error rates log(e_l / e_{l+1}) / log(h_l / h_{l+1}) per adjacent
/// pair; the overall rate is the least-squares slope over all levels.
RateTable norm_rate_table(const std::vector<Real>& h, const std::vector<std::string>& columns,
                          const Matrix& values);

/// Slope of log(e) against log(h) by least squares; NaN when degenerate.
Real lsq_slope(const std::vector<Real>& h, const std::vector<Real>& e);

/// Two-level rate log(e0/e1) / log(h0/h1); NaN when degenerate.
Real pair_rate(Real h0, Real e0, Real h1, Real e1);

}  // namespace rrm
