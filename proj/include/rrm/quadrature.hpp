#pragma once

#include <rrm/types.hpp>

namespace rrm {

/// Gauss-Legendre rule mapped to [0,1]; weights sum to 1.
struct QuadRule1D {
  Vector nodes;
  Vector weights;
};

/// Tensor rule on [0,1]^2; weights sum to 1.
struct QuadRule2D {
  Matrix points;  // one (s,t) row per node
  Vector weights;
  int per_axis = 0;
};

/// p-point rule, exact for polynomials of degree <= 2p-1. Requires 1 <= p <= 10.
QuadRule1D gauss_rule_1d(int p);

/// Tensor product of gauss_rule_1d(p), exact for Q_{2p-1}.
QuadRule2D gauss_rule(int p);

/// Integral of f over [x0, x0+hx] x [y0, y0+hy].
template <class F>
Real integrate_cell(Real x0, Real y0, Real hx, Real hy, F&& f, const QuadRule2D& rule) {
  Real sum = 0.0;
  for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
    const Real x = x0 + hx * rule.points(q, 0);
    const Real y = y0 + hy * rule.points(q, 1);
    sum += rule.weights[q] * f(x, y);
  }
  return sum * hx * hy;
}

/// Mean value of f over the same cell.
template <class F>
Real cell_mean(Real x0, Real y0, Real hx, Real hy, F&& f, const QuadRule2D& rule) {
  Real sum = 0.0;
  for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
    const Real x = x0 + hx * rule.points(q, 0);
    const Real y = y0 + hy * rule.points(q, 1);
    sum += rule.weights[q] * f(x, y);
  }
  return sum;
}

/// Default orders: gradient terms are quadratic polynomials, mass terms are
/// quartic, anything with a rational coefficient factor gets p=4.
inline constexpr int kOrderGrad = 2;
inline constexpr int kOrderMass = 3;
inline constexpr int kOrderRational = 4;

}  // namespace rrm
