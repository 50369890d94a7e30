#pragma once

#include <rrm/basis.hpp>
#include <rrm/fields.hpp>
#include <rrm/quadrature.hpp>
#include <rrm/types.hpp>

#include <iosfwd>

namespace rrm {

/// sum_K int_K hess(u) : hess(v) over active cells (Frobenius pairing).
/// Piecewise-constant integrand, so the cell blocks are closed form.
SparseMatrix assemble_hessian_stiffness(const BasisSet& bs);

/// sum_K int_K beta lap(u) lap(v). Throws CoefficientError when beta is
/// nonpositive at a quadrature node.
SparseMatrix assemble_laplace_bilap(const BasisSet& bs, const CoefficientField& beta,
                                    int p = kOrderRational);

/// sum_K int_K grad(u) . grad(v); the integrand is quadratic, so the default
/// rule is exact.
SparseMatrix assemble_grad_stiffness(const BasisSet& bs, int p = kOrderGrad);

/// sum_K int_K w u v. Pass p = kOrderRational for non-polynomial weights.
SparseMatrix assemble_mass_weighted(const BasisSet& bs, const CoefficientField& w,
                                    int p = kOrderMass);

/// sum_K int_K (lap(u) v + u lap(v)) / (beta - 1) - grad(u) . grad(v).
/// Throws CoefficientError when beta <= 1 at a quadrature node.
SparseMatrix assemble_mixed_B(const BasisSet& bs, const CoefficientField& beta,
                              int p = kOrderRational);

/// Load vector int_K f v over active cells.
Vector assemble_load(const BasisSet& bs, const ScalarField& f, int p = kOrderRational);

/// Plain-text COO dump: one "row col value" line per stored entry.
void export_coo(const SparseMatrix& m, std::ostream& os);

}  // namespace rrm
