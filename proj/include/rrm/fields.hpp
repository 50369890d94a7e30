#pragma once

#include <rrm/types.hpp>

#include <array>
#include <functional>

namespace rrm {

using ScalarField = std::function<Real(Real, Real)>;

/// Scalar coefficient with the derivative data the drivers need.
struct CoefficientField {
  std::string name;
  std::function<Real(Real, Real)> value;
  std::function<Vec2(Real, Real)> gradient;    // null when unused
  std::function<Real(Real, Real)> laplacian;   // null when unused
};

/// Constant coefficient c.
CoefficientField beta_constant(Real c);
/// Affine coefficient 8 + x - y.
CoefficientField beta_affine();

/// Smooth scalar field with closed-form partials through order 4, valid on a
/// neighborhood of the domain (virtual cells included).
struct ExactField {
  std::string name;
  /// deriv(i, j) = d^{i+j} f / dx^i dy^j, for i + j <= 4.
  std::function<Real(int, int, Real, Real)> deriv;

  Real value(Real x, Real y) const { return deriv(0, 0, x, y); }
  Vec2 grad(Real x, Real y) const { return {deriv(1, 0, x, y), deriv(0, 1, x, y)}; }
  Hessian hess(Real x, Real y) const {
    return {deriv(2, 0, x, y), deriv(1, 1, x, y), deriv(0, 2, x, y)};
  }
  Real laplacian(Real x, Real y) const { return deriv(2, 0, x, y) + deriv(0, 2, x, y); }
};

/// Separable field X(x)*Y(y) given per-axis derivative ladders X^(k), Y^(k), k = 0..4.
ExactField product_field(std::string name,
                         std::array<std::function<Real(Real)>, 5> dx,
                         std::array<std::function<Real(Real)>, 5> dy);

/// (sin(pi x) sin(pi y))^2
ExactField squared_sine_field();
/// sin(pi x) sin(pi y)
ExactField sine_field();
/// x^i y^j with exact derivatives (i, j >= 0).
ExactField monomial_field(int i, int j);
/// Zero field.
ExactField zero_field();

/// Right-hand side eps^2 * Lap(beta * Lap u) - Lap u expanded by the product
/// rule: eps^2 (Lap beta * Lap u + 2 grad beta . grad(Lap u) + beta * Lap^2 u) - Lap u.
/// Requires beta.gradient and beta.laplacian.
std::function<Real(Real, Real)> perturbation_f(const ExactField& u,
                                               const CoefficientField& beta,
                                               Real eps);

/// Max relative mismatch between deriv(i,j) for 1 <= i+j <= 2 and central
/// finite differences of deriv(0,0) at (x, y); used as a self-check.
Real field_derivative_mismatch(const ExactField& f, Real x, Real y, Real step = 1e-5);

}  // namespace rrm
