#include <rrm/linalg.hpp>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace rrm {

Vector solve_spd(const SparseMatrix& a, const Vector& rhs) {
  if (a.rows() != a.cols() || a.rows() != rhs.size())
    throw ConfigError("solve_spd: dimension mismatch");
  if (rhs.size() == 0) return Vector();
  const Real scale = rhs.norm();
  if (scale == 0.0) return Vector::Zero(rhs.size());

  Eigen::SimplicialLLT<SparseMatrix> llt(a);
  if (llt.info() != Eigen::Success)
    throw SolverError("solve_spd: Cholesky factorization failed; matrix is not SPD");
  Vector x = llt.solve(rhs);
  for (int pass = 0; pass < 5; ++pass) {
    const Vector r = rhs - a * x;
    if (r.norm() <= 1e-10 * scale) return x;
    x += llt.solve(r);
  }
  if ((rhs - a * x).norm() <= 1e-10 * scale) return x;
  throw SolverError("solve_spd: residual did not reach 1e-10 after refinement");
}

namespace {

using Complex = std::complex<Real>;

Real inf_norm(const SparseMatrix& m) {
  Vector rowsum = Vector::Zero(m.rows());
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      rowsum[it.row()] += std::abs(it.value());
  return m.rows() ? rowsum.maxCoeff() : 0.0;
}

void check_symmetric(const SparseMatrix& m, const char* name) {
  SparseMatrix diff = m - SparseMatrix(m.transpose());
  Real asym = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it)
      asym = std::max(asym, std::abs(it.value()));
  if (asym > 1e-12 * std::max(1.0, inf_norm(m)))
    throw ConfigError(std::string("solve_quadratic_eigen: matrix ") + name + " is not symmetric");
}

struct Candidate {
  Real tau;
  Vector x;
  Real residual;
};

/// Relative residual ||(A + tau B + tau^2 C) x|| / ((|A| + tau |B| + tau^2 |C|) |x|).
Real quadratic_residual(const SparseMatrix& A, const SparseMatrix& B, const SparseMatrix& C,
                        Real na, Real nb, Real nc, Real tau, const Vector& x) {
  const Vector r = A * x + tau * (B * x) + tau * tau * (C * x);
  const Real denom = (na + std::abs(tau) * nb + tau * tau * nc) * x.norm();
  return denom > 0.0 ? r.norm() / denom : r.norm();
}

/// Rotate the dominant component to the real axis and drop the imaginary part.
Vector realize(const Eigen::VectorXcd& v) {
  Eigen::Index imax = 0;
  const Real vmax = v.cwiseAbs().maxCoeff(&imax);
  if (vmax == 0.0) return v.real();
  const Complex phase = v[imax] / vmax;
  return (v / phase).real();
}

bool admissible(Complex tau, Real imag_tol) {
  return std::abs(tau.imag()) <= imag_tol * std::max(1.0, std::abs(tau.real())) &&
         tau.real() > 0.0;
}

void insert_candidate(std::vector<Candidate>& found, Candidate cand) {
  for (auto& c : found) {
    if (std::abs(c.tau - cand.tau) <= 1e-8 * std::max(1.0, std::abs(c.tau))) {
      if (cand.residual < c.residual) c = std::move(cand);
      return;
    }
  }
  found.push_back(std::move(cand));
}

EigenResult collect(std::vector<Candidate> found, std::vector<Complex> tau_all,
                    const EigenOptions& opt, Eigen::Index n) {
  if (static_cast<int>(found.size()) < opt.k)
    throw SolverError("solve_quadratic_eigen: only " + std::to_string(found.size()) + " of " +
                      std::to_string(opt.k) + " admissible eigenvalues converged");
  std::sort(found.begin(), found.end(),
            [](const Candidate& a, const Candidate& b) { return a.tau < b.tau; });
  found.resize(static_cast<size_t>(opt.k));

  EigenResult out;
  out.tau_all = std::move(tau_all);
  out.vectors.resize(n, opt.k);
  for (int i = 0; i < opt.k; ++i) {
    out.tau.push_back(found[static_cast<size_t>(i)].tau);
    out.lambda.push_back(std::sqrt(found[static_cast<size_t>(i)].tau));
    out.vectors.col(i) = found[static_cast<size_t>(i)].x;
    out.residuals.push_back(found[static_cast<size_t>(i)].residual);
  }
  return out;
}

EigenResult dense_path(const SparseMatrix& A, const SparseMatrix& B, const SparseMatrix& C,
                       Real na, Real nb, Real nc, const EigenOptions& opt) {
  const Eigen::Index n = A.rows();
  Eigen::SimplicialLLT<SparseMatrix> cllt(C);
  if (cllt.info() != Eigen::Success)
    throw SolverError("solve_quadratic_eigen: mass block is not SPD");

  Matrix companion = Matrix::Zero(2 * n, 2 * n);
  companion.topLeftCorner(n, n) = -cllt.solve(Matrix(B));
  companion.topRightCorner(n, n) = -cllt.solve(Matrix(A));
  companion.bottomLeftCorner(n, n).setIdentity();

  Eigen::EigenSolver<Matrix> es(companion);
  if (es.info() != Eigen::Success)
    throw SolverError("solve_quadratic_eigen: dense eigensolver did not converge");

  std::vector<Complex> tau_all(es.eigenvalues().data(),
                               es.eigenvalues().data() + es.eigenvalues().size());
  std::vector<int> order(static_cast<size_t>(2 * n));
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return tau_all[static_cast<size_t>(a)].real() < tau_all[static_cast<size_t>(b)].real();
  });

  std::vector<Candidate> found;
  for (int q : order) {
    if (static_cast<int>(found.size()) >= opt.k) break;
    const Complex tc = tau_all[static_cast<size_t>(q)];
    if (!admissible(tc, opt.imag_tol)) continue;
    const Real tau = tc.real();
    Vector x = realize(es.eigenvectors().col(q).tail(n));
    const Real xnorm = x.norm();
    if (xnorm == 0.0) continue;
    x /= xnorm;
    const Real res = quadratic_residual(A, B, C, na, nb, nc, tau, x);
    if (res > opt.residual_tol) continue;
    found.push_back({tau, std::move(x), res});
  }
  return collect(std::move(found), std::move(tau_all), opt, n);
}

EigenResult arnoldi_path(const SparseMatrix& A, const SparseMatrix& B, const SparseMatrix& C,
                         Real na, Real nb, Real nc, const EigenOptions& opt) {
  const Eigen::Index n = A.rows();
  const Eigen::Index dim = 2 * n;
  const int m = static_cast<int>(std::min<Eigen::Index>(opt.arnoldi_dim, dim));

  std::mt19937 rng(opt.seed);
  Vector v0(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    v0[i] = 2.0 * (static_cast<Real>(rng()) / 4294967296.0) - 1.0;
  v0.normalize();

  std::vector<Candidate> found;
  std::vector<Complex> tau_all;
  Real sigma = 0.0;

  for (int shift = 0; shift < opt.max_shifts; ++shift) {
    Eigen::SparseLU<SparseMatrix> lu;
    for (int attempt = 0;; ++attempt) {
      SparseMatrix q = A + sigma * B + (sigma * sigma) * C;
      q.makeCompressed();
      lu.compute(q);
      if (lu.info() == Eigen::Success) break;
      if (attempt >= 3)
        throw SolverError("solve_quadratic_eigen: shifted factorization failed");
      sigma = sigma * 1.02 + 0.01;
    }
    const auto apply = [&](const Vector& z) {
      const Vector z1 = z.head(n), z2 = z.tail(n);
      const Vector rhs = C * z1 + B * z2 + sigma * (C * z2);
      Vector w(dim);
      w.tail(n) = -lu.solve(rhs);
      w.head(n) = z2 + sigma * w.tail(n);
      return w;
    };

    Matrix V(dim, m + 1);
    Matrix H = Matrix::Zero(m + 1, m);
    V.col(0) = v0;
    int steps = m;
    for (int j = 0; j < m; ++j) {
      Vector w = apply(V.col(j));
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i <= j; ++i) {
          const Real hij = V.col(i).dot(w);
          H(i, j) += hij;
          w -= hij * V.col(i);
        }
      H(j + 1, j) = w.norm();
      if (H(j + 1, j) < 1e-14) {
        steps = j + 1;
        break;
      }
      V.col(j + 1) = w / H(j + 1, j);
    }

    Eigen::EigenSolver<Matrix> es(H.topLeftCorner(steps, steps));
    if (es.info() != Eigen::Success)
      throw SolverError("solve_quadratic_eigen: Hessenberg eigensolver did not converge");
    const Real hlast = (steps < m) ? 0.0 : H(steps, steps - 1);

    Real tau_max_here = sigma;
    for (int q = 0; q < steps; ++q) {
      const Complex theta = es.eigenvalues()[q];
      if (std::abs(theta) < 1e-14) continue;
      const Complex tc = sigma + 1.0 / theta;
      tau_all.push_back(tc);
      if (!admissible(tc, opt.imag_tol)) continue;
      const Real est = hlast * std::abs(es.eigenvectors()(steps - 1, q));
      if (est > 1e-6 * std::abs(theta)) continue;
      Vector z = realize(V.leftCols(steps).cast<Complex>() * es.eigenvectors().col(q));
      Vector x = z.tail(n);
      const Real xnorm = x.norm();
      if (xnorm < 1e-12 * z.norm()) continue;
      x /= xnorm;
      const Real tau = tc.real();
      const Real res = quadratic_residual(A, B, C, na, nb, nc, tau, x);
      if (res > opt.residual_tol) continue;
      insert_candidate(found, {tau, std::move(x), res});
      tau_max_here = std::max(tau_max_here, tau);
    }

    if (static_cast<int>(found.size()) >= opt.k) break;
    sigma = found.empty() ? (sigma == 0.0 ? 4.0 : 2.0 * sigma) : 1.2 * tau_max_here;
  }
  return collect(std::move(found), std::move(tau_all), opt, n);
}

}  // namespace

EigenResult solve_quadratic_eigen(const SparseMatrix& A, const SparseMatrix& B,
                                  const SparseMatrix& C, const EigenOptions& opt) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || B.rows() != n || B.cols() != n || C.rows() != n || C.cols() != n)
    throw ConfigError("solve_quadratic_eigen: dimension mismatch");
  if (n == 0) throw ConfigError("solve_quadratic_eigen: empty system");
  if (opt.k < 1) throw ConfigError("solve_quadratic_eigen: k must be positive");
  check_symmetric(A, "A");
  check_symmetric(B, "B");
  check_symmetric(C, "C");

  const Real na = inf_norm(A), nb = inf_norm(B), nc = inf_norm(C);
  if (n <= opt.max_dense) return dense_path(A, B, C, na, nb, nc, opt);
  return arnoldi_path(A, B, C, na, nb, nc, opt);
}

}  // namespace rrm
