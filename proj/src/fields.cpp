#include <rrm/fields.hpp>

#include <cmath>

namespace rrm {

namespace {
constexpr Real kPi = 3.14159265358979323846;
}

CoefficientField beta_constant(Real c) {
  CoefficientField f;
  f.name = "const:" + std::to_string(c);
  f.value = [c](Real, Real) { return c; };
  f.gradient = [](Real, Real) { return Vec2{0.0, 0.0}; };
  f.laplacian = [](Real, Real) { return 0.0; };
  return f;
}

CoefficientField beta_affine() {
  CoefficientField f;
  f.name = "affine";
  f.value = [](Real x, Real y) { return 8.0 + x - y; };
  f.gradient = [](Real, Real) { return Vec2{1.0, -1.0}; };
  f.laplacian = [](Real, Real) { return 0.0; };
  return f;
}

ExactField product_field(std::string name,
                         std::array<std::function<Real(Real)>, 5> dx,
                         std::array<std::function<Real(Real)>, 5> dy) {
  ExactField f;
  f.name = std::move(name);
  f.deriv = [dx = std::move(dx), dy = std::move(dy)](int i, int j, Real x, Real y) {
    return dx[static_cast<size_t>(i)](x) * dy[static_cast<size_t>(j)](y);
  };
  return f;
}

ExactField squared_sine_field() {
  // s(z) = sin^2(pi z); s' = pi sin(2 pi z); s'' = 2 pi^2 cos(2 pi z);
  // s''' = -4 pi^3 sin(2 pi z); s'''' = -8 pi^4 cos(2 pi z).
  std::array<std::function<Real(Real)>, 5> d = {
      [](Real z) { const Real s = std::sin(kPi * z); return s * s; },
      [](Real z) { return kPi * std::sin(2.0 * kPi * z); },
      [](Real z) { return 2.0 * kPi * kPi * std::cos(2.0 * kPi * z); },
      [](Real z) { return -4.0 * kPi * kPi * kPi * std::sin(2.0 * kPi * z); },
      [](Real z) { return -8.0 * kPi * kPi * kPi * kPi * std::cos(2.0 * kPi * z); },
  };
  return product_field("squared-sine", d, d);
}

ExactField sine_field() {
  std::array<std::function<Real(Real)>, 5> d = {
      [](Real z) { return std::sin(kPi * z); },
      [](Real z) { return kPi * std::cos(kPi * z); },
      [](Real z) { return -kPi * kPi * std::sin(kPi * z); },
      [](Real z) { return -kPi * kPi * kPi * std::cos(kPi * z); },
      [](Real z) { return kPi * kPi * kPi * kPi * std::sin(kPi * z); },
  };
  return product_field("sine", d, d);
}

namespace {
std::function<Real(Real)> monomial_deriv(int degree, int order) {
  if (order > degree) return [](Real) { return 0.0; };
  Real c = 1.0;
  for (int k = 0; k < order; ++k) c *= degree - k;
  const int rest = degree - order;
  return [c, rest](Real z) { return c * std::pow(z, rest); };
}
}  // namespace

ExactField monomial_field(int i, int j) {
  std::array<std::function<Real(Real)>, 5> dx, dy;
  for (int k = 0; k <= 4; ++k) {
    dx[static_cast<size_t>(k)] = monomial_deriv(i, k);
    dy[static_cast<size_t>(k)] = monomial_deriv(j, k);
  }
  return product_field("x^" + std::to_string(i) + "y^" + std::to_string(j), dx, dy);
}

ExactField zero_field() {
  ExactField f;
  f.name = "zero";
  f.deriv = [](int, int, Real, Real) { return 0.0; };
  return f;
}

std::function<Real(Real, Real)> perturbation_f(const ExactField& u,
                                               const CoefficientField& beta,
                                               Real eps) {
  if (!beta.gradient || !beta.laplacian)
    throw CoefficientError("perturbation_f: coefficient must provide gradient and laplacian");
  const Real e2 = eps * eps;
  return [u, beta, e2](Real x, Real y) {
    const Real lap_u = u.deriv(2, 0, x, y) + u.deriv(0, 2, x, y);
    const Vec2 grad_lap_u{u.deriv(3, 0, x, y) + u.deriv(1, 2, x, y),
                          u.deriv(2, 1, x, y) + u.deriv(0, 3, x, y)};
    const Real bilap_u =
        u.deriv(4, 0, x, y) + 2.0 * u.deriv(2, 2, x, y) + u.deriv(0, 4, x, y);
    const Real term = beta.laplacian(x, y) * lap_u +
                      2.0 * beta.gradient(x, y).dot(grad_lap_u) +
                      beta.value(x, y) * bilap_u;
    return e2 * term - lap_u;
  };
}

Real field_derivative_mismatch(const ExactField& f, Real x, Real y, Real step) {
  const auto v = [&](Real a, Real b) { return f.deriv(0, 0, a, b); };
  const Real fx = (v(x + step, y) - v(x - step, y)) / (2.0 * step);
  const Real fy = (v(x, y + step) - v(x, y - step)) / (2.0 * step);
  const Real fxx = (v(x + step, y) - 2.0 * v(x, y) + v(x - step, y)) / (step * step);
  const Real fyy = (v(x, y + step) - 2.0 * v(x, y) + v(x, y - step)) / (step * step);
  const Real fxy = (v(x + step, y + step) - v(x + step, y - step) - v(x - step, y + step) +
                    v(x - step, y - step)) /
                   (4.0 * step * step);
  Real worst = 0.0;
  const auto rel = [&](Real got, Real want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
  };
  worst = std::max(worst, rel(fx, f.deriv(1, 0, x, y)));
  worst = std::max(worst, rel(fy, f.deriv(0, 1, x, y)));
  worst = std::max(worst, rel(fxx, f.deriv(2, 0, x, y)));
  worst = std::max(worst, rel(fyy, f.deriv(0, 2, x, y)));
  worst = std::max(worst, rel(fxy, f.deriv(1, 1, x, y)));
  return worst;
}

}  // namespace rrm
