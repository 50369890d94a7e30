#include <rrm/quadrature.hpp>

#include <cmath>

namespace rrm {

QuadRule1D gauss_rule_1d(int p) {
  if (p < 1 || p > 10) throw ConfigError("gauss_rule_1d: order must be in [1,10]");
  QuadRule1D rule;
  rule.nodes.resize(p);
  rule.weights.resize(p);
  if (p == 1) {
    rule.nodes[0] = 0.5;
    rule.weights[0] = 1.0;
    return rule;
  }
  // Golub-Welsch: eigen-decomposition of the Jacobi matrix on [-1,1].
  Matrix jacobi = Matrix::Zero(p, p);
  for (int k = 1; k < p; ++k) {
    const Real b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(jacobi);
  const Vector t = es.eigenvalues();  // ascending
  for (int i = 0; i < p; ++i) {
    const Real v0 = es.eigenvectors()(0, i);
    rule.nodes[i] = 0.5 * (t[i] + 1.0);
    rule.weights[i] = v0 * v0;  // 2*v0^2 on [-1,1], halved by the map to [0,1]
  }
  // One Newton step against the Legendre recurrence to polish the nodes.
  for (int i = 0; i < p; ++i) {
    const Real x = 2.0 * rule.nodes[i] - 1.0;
    Real pk = 1.0, pk1 = 0.0;
    for (int k = 0; k < p; ++k) {
      const Real pk2 = pk1;
      pk1 = pk;
      pk = ((2.0 * k + 1.0) * x * pk1 - k * pk2) / (k + 1.0);
    }
    const Real dpk = p * (x * pk - pk1) / (x * x - 1.0);
    const Real xn = x - pk / dpk;
    rule.nodes[i] = 0.5 * (xn + 1.0);
    rule.weights[i] = 1.0 / ((1.0 - xn * xn) * dpk * dpk * 0.5 * 2.0);
  }
  return rule;
}

QuadRule2D gauss_rule(int p) {
  const QuadRule1D r1 = gauss_rule_1d(p);
  QuadRule2D rule;
  rule.per_axis = p;
  rule.points.resize(p * p, 2);
  rule.weights.resize(p * p);
  int q = 0;
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < p; ++i, ++q) {
      rule.points(q, 0) = r1.nodes[i];
      rule.points(q, 1) = r1.nodes[j];
      rule.weights[q] = r1.weights[i] * r1.weights[j];
    }
  }
  return rule;
}

}  // namespace rrm
