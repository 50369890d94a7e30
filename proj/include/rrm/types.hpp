#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <stdexcept>
#include <string>

namespace rrm {

inline constexpr const char* kVersion = "0.1.0";

using Real = double;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = DenseMatrix<Real>;
using Vector = DenseVector<Real>;
using SparseMatrix = Eigen::SparseMatrix<Real>;
using Triplet = Eigen::Triplet<Real>;
using Vec2 = Eigen::Vector2d;

/// Second derivatives packed as (d_xx, d_xy, d_yy).
using Hessian = Eigen::Vector3d;

/// Coefficients of a quadratic over {1, s, t, s^2, st, t^2} in cell-local
/// coordinates s, t in [0,1].
using Coeff6 = Eigen::Matrix<Real, 6, 1>;
/// Coefficients over {1, s, t, s^2, st, t^2, s^3, t^3} on the unit square.
using Coeff8 = Eigen::Matrix<Real, 8, 1>;

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};
struct ConstructionError : std::runtime_error {
  explicit ConstructionError(const std::string& m) : std::runtime_error(m) {}
};
struct CoefficientError : std::runtime_error {
  explicit CoefficientError(const std::string& m) : std::runtime_error(m) {}
};
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace rrm
