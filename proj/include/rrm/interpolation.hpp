#pragma once

#include <rrm/basis.hpp>
#include <rrm/fields.hpp>
#include <rrm/grid.hpp>
#include <rrm/quadrature.hpp>
#include <rrm/types.hpp>

#include <array>
#include <functional>

namespace rrm {

/// Weights of the five-cell averaging functional on a 3x3 patch, over the
/// left, right, lower, upper, and center cells of the cross in that order.
/// They sum to 1 and make the functional reproduce the patch basis DOFs, so
/// the induced interpolation is exact on quadratics.
std::array<Real, 5> lambda_weights(const PatchGeometry& pg);

/// The averaging functional itself: the weighted sum of cell means of f over
/// the cross cells.
Real lambda(const PatchGeometry& pg, const ScalarField& f, const QuadRule2D& rule);

/// Interpolation coefficients onto the span of the interior basis (one entry
/// per interior cell, in basis order). Requires an interior-only basis set.
Vector interpolate_interior(const BasisSet& bs, const ScalarField& f, int p = kOrderRational);

/// Coefficients of the extended interpolant, one per real-or-added center;
/// f must be defined two virtual cell layers past the boundary. Requires a
/// full (extended) basis set.
Vector interpolate_extended(const BasisSet& bs, const ScalarField& f, int p = kOrderRational);

/// Broken seminorm of order k of (combined field - v) over the active cells:
/// k = 0 the L2 norm, k = 1 the piecewise gradient norm, k = 2 the piecewise
/// Hessian norm (mixed derivative counted twice).
Real broken_seminorm_error(const ExactField& v, const Vector& coeffs, const BasisSet& bs,
                           int k, int p = kOrderRational);

}  // namespace rrm
