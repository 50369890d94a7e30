#pragma once

#include <rrm/types.hpp>

#include <complex>
#include <vector>

namespace rrm {

/// Direct sparse Cholesky solve with iterative refinement. Throws SolverError
/// if the factorization fails or the relative residual stays above 1e-10
/// after five refinement steps.
Vector solve_spd(const SparseMatrix& a, const Vector& rhs);

struct EigenOptions {
  int k = 6;                 // number of eigenvalues requested
  Real residual_tol = 1e-8;  // quadratic residual acceptance, relative
  Real imag_tol = 1e-8;      // |Im tau| <= imag_tol * max(1, |Re tau|)
  int max_dense = 2048;      // N above this switches to shift-invert Arnoldi
  int arnoldi_dim = 140;     // Krylov dimension per shift
  int max_shifts = 8;
  unsigned seed = 20240915u;
};

struct EigenResult {
  /// All raw eigenvalue approximations seen (diagnostics; unsorted).
  std::vector<std::complex<Real>> tau_all;
  /// Accepted eigenvalues of the quadratic pencil, ascending, k of them.
  std::vector<Real> tau;
  /// lambda = sqrt(tau).
  std::vector<Real> lambda;
  /// One normalized eigenvector per accepted tau.
  Matrix vectors;
  /// Relative quadratic residuals of the accepted pairs.
  std::vector<Real> residuals;
};

/// The k smallest real positive eigenvalues tau of (A + tau B + tau^2 C)x = 0
/// with A, B, C symmetric and C positive definite. Linearized by the
/// companion pencil [[-B, -A], [I, 0]] z = tau [[C, 0], [0, I]] z with
/// z = (tau x, x). Small problems go through a dense solve of the companion
/// matrix; large ones through shift-invert Arnoldi with a shift ladder
/// starting at 0. Every accepted pair is certified by its quadratic residual;
/// the iterative path reports a multiple eigenvalue only once.
EigenResult solve_quadratic_eigen(const SparseMatrix& A, const SparseMatrix& B,
                                  const SparseMatrix& C, const EigenOptions& opt = {});

}  // namespace rrm
