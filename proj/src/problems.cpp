#include <rrm/problems.hpp>

#include <rrm/io.hpp>

#include <algorithm>
#include <cmath>

namespace rrm {

CoefficientField BetaSpec::make() const {
  return affine ? beta_affine() : beta_constant(constant);
}

std::string BetaSpec::label() const {
  return affine ? "affine" : "const:" + format_number(constant);
}

Discretization discretize(const Domain& domain, GridKind kind, int n, Real theta, Real gamma0,
                          bool extended) {
  Discretization d;
  Grid grid = (kind == GridKind::Uniform) ? build_uniform_grid(domain, n)
                                          : build_graded_grid(domain, n, theta);
  Topology topo = classify(grid, gamma0);
  d.ext = std::make_unique<ExtendedGrid>(extend_grid(std::move(grid), std::move(topo)));
  d.basis = extended ? build_extended_basis(*d.ext) : build_interior_basis(*d.ext);
  if (!extended && d.basis.size() == 0)
    throw ConfigError("discretize: no interior cells at n=" + std::to_string(n) +
                      "; refine the grid");
  d.h = d.ext->base.mesh_size();
  return d;
}

namespace {

void check_levels(const std::vector<int>& levels) {
  if (levels.empty()) throw ConfigError("empty level list");
  for (size_t i = 0; i + 1 < levels.size(); ++i)
    if (levels[i] >= levels[i + 1]) throw ConfigError("levels must be strictly ascending");
}

void check_cap(int n, int max_n) {
  if (n > max_n)
    throw ConfigError("desk-scale cap: n=" + std::to_string(n) + " exceeds " +
                      std::to_string(max_n) + " (set RRM_MAX_N to raise it)");
}

}  // namespace

PerturbationResult run_perturbation(const PerturbationConfig& cfg) {
  check_levels(cfg.levels);
  if (cfg.eps_list.empty()) throw ConfigError("run_perturbation: empty eps list");
  for (Real eps : cfg.eps_list)
    if (!(eps > 0.0)) throw ConfigError("run_perturbation: eps must be positive");

  const CoefficientField beta = cfg.beta.make();
  const ExactField u = squared_sine_field();
  const ExactField u0 = sine_field();

  PerturbationResult out;
  std::vector<std::vector<ErrorReport>> by_eps(cfg.eps_list.size());
  for (int n : cfg.levels) {
    check_cap(n, cfg.max_n);
    const Discretization d = discretize(cfg.domain, cfg.grid, n, cfg.theta, cfg.gamma0);
    out.h.push_back(d.h);
    const SparseMatrix bilap = assemble_laplace_bilap(d.basis, beta);
    const SparseMatrix grad = assemble_grad_stiffness(d.basis);
    for (size_t ei = 0; ei < cfg.eps_list.size(); ++ei) {
      const Real eps = cfg.eps_list[ei];
      const SparseMatrix system = (eps * eps) * bilap + grad;
      Vector rhs;
      if (cfg.study == StudyKind::Manufactured) {
        rhs = assemble_load(d.basis, perturbation_f(u, beta, eps));
      } else {
        rhs = assemble_load(d.basis, [&u0](Real x, Real y) { return -u0.laplacian(x, y); });
      }
      const Vector sol = solve_spd(system, rhs);
      by_eps[ei].push_back(cfg.study == StudyKind::Manufactured
                               ? discrete_solution_error(u, sol, d.basis, eps)
                               : boundary_layer_error(u0, sol, d.basis, eps));
    }
  }

  for (size_t ei = 0; ei < cfg.eps_list.size(); ++ei) {
    PerturbationRun run;
    run.eps = cfg.eps_list[ei];
    run.reports = std::move(by_eps[ei]);
    if (run.reports.size() >= 2) {
      Matrix vals(static_cast<Eigen::Index>(run.reports.size()), 4);
      for (size_t l = 0; l < run.reports.size(); ++l) {
        const ErrorReport& r = run.reports[l];
        vals.row(static_cast<Eigen::Index>(l)) << r.err_h1, r.err_h2, r.energy, r.rel_energy;
      }
      run.rates = norm_rate_table(out.h, {"err_h1", "err_h2", "energy", "rel_energy"}, vals);
    }
    out.runs.push_back(std::move(run));
  }
  return out;
}

TransmissionResult run_transmission(const TransmissionConfig& cfg) {
  check_levels(cfg.levels);
  if (cfg.k < 1) throw ConfigError("run_transmission: k must be positive");
  if (!cfg.beta.affine && !(cfg.beta.constant > 1.0))
    throw ConfigError("run_transmission: constant beta must exceed 1");

  const CoefficientField beta = cfg.beta.make();
  const CoefficientField inv_bm1{
      "1/(" + beta.name + "-1)",
      [beta](Real x, Real y) { return 1.0 / (beta.value(x, y) - 1.0); }, nullptr, nullptr};
  const CoefficientField b_over_bm1{
      beta.name + "/(" + beta.name + "-1)",
      [beta](Real x, Real y) {
        const Real b = beta.value(x, y);
        return b / (b - 1.0);
      },
      nullptr, nullptr};

  TransmissionResult out;
  for (int n : cfg.levels) {
    check_cap(n, cfg.max_n);
    const Discretization d = discretize(cfg.domain, cfg.grid, n, cfg.theta, cfg.gamma0);
    const SparseMatrix A = assemble_laplace_bilap(d.basis, inv_bm1, kOrderRational);
    const SparseMatrix B = assemble_mixed_B(d.basis, beta, kOrderRational);
    const SparseMatrix C = assemble_mass_weighted(d.basis, b_over_bm1, kOrderRational);
    EigenOptions opt = cfg.eigen;
    opt.k = cfg.k;
    const EigenResult er = solve_quadratic_eigen(A, B, C, opt);
    out.n.push_back(n);
    out.h.push_back(d.h);
    out.lambdas.push_back(er.lambda);
  }
  if (out.h.size() >= 3) {
    out.rates = eigen_rate_table(out.h, out.lambdas);
    out.rates_defined = true;
  }
  return out;
}

std::vector<GridCase> standard_battery() {
  std::vector<GridCase> cases;
  for (const Domain& dom : {Domain::unit_square(), Domain::l_shape()})
    for (int n : {8, 16}) {
      cases.push_back({std::string(dom.kind_name()) + "/uniform/n=" + std::to_string(n), dom,
                       GridKind::Uniform, n, 0.4});
      cases.push_back({std::string(dom.kind_name()) + "/graded/n=" + std::to_string(n), dom,
                       GridKind::Graded, n, 0.4});
    }
  return cases;
}

Discretization discretize_case(const GridCase& gc, bool extended) {
  return discretize(gc.domain, gc.kind, gc.n, gc.theta, 8.0, extended);
}

Real grisvard_deviation(const GridCase& gc) {
  const Discretization d = discretize_case(gc);
  const SparseMatrix hess = assemble_hessian_stiffness(d.basis);
  const SparseMatrix lap = assemble_laplace_bilap(d.basis, beta_constant(1.0));
  Real scale = 0.0;
  for (int k = 0; k < lap.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(lap, k); it; ++it)
      scale = std::max(scale, std::abs(it.value()));
  SparseMatrix diff = hess - lap;
  Real dev = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it)
      dev = std::max(dev, std::abs(it.value()));
  return scale > 0.0 ? dev / scale : dev;
}

namespace {

/// Local coefficients of a quadratic field on the cell [x0,x0+lx]x[y0,y0+ly].
Coeff6 local_quadratic(const ExactField& v, Real x0, Real y0, Real lx, Real ly) {
  Coeff6 c;
  c[0] = v.deriv(0, 0, x0, y0);
  c[1] = v.deriv(1, 0, x0, y0) * lx;
  c[2] = v.deriv(0, 1, x0, y0) * ly;
  c[3] = 0.5 * v.deriv(2, 0, x0, y0) * lx * lx;
  c[4] = v.deriv(1, 1, x0, y0) * lx * ly;
  c[5] = 0.5 * v.deriv(0, 2, x0, y0) * ly * ly;
  return c;
}

}  // namespace

Real reproduction_residual(const GridCase& gc) {
  const Discretization d = discretize_case(gc, true);
  const Grid& g = d.grid();
  Real worst = 0.0;
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; i + j <= 2; ++j) {
      const ExactField v = monomial_field(i, j);
      const Vector coeffs =
          interpolate_extended(d.basis, [&v](Real x, Real y) { return v.value(x, y); });
      for (int cj = 0; cj < g.ny(); ++cj)
        for (int ci = 0; ci < g.nx(); ++ci) {
          if (!g.is_active(ci, cj)) continue;
          const Coeff6 got = combine_on_cell(d.basis, coeffs, ci, cj);
          const Coeff6 want = local_quadratic(v, g.x_lines[static_cast<size_t>(ci)],
                                              g.y_lines[static_cast<size_t>(cj)], g.hx(ci),
                                              g.hy(cj));
          const Real res = (got - want).cwiseAbs().maxCoeff() /
                           std::max(1.0, want.cwiseAbs().maxCoeff());
          worst = std::max(worst, res);
        }
    }
  return worst;
}

Real checkerboard_residual(const GridCase& gc) {
  const Discretization d = discretize_case(gc, true);
  const ExtendedGrid& ext = *d.ext;
  const Grid& g = d.grid();
  Vector coeffs(d.basis.size());
  Real cmax = 0.0;
  for (int k = 0; k < d.basis.size(); ++k) {
    const int eid = d.basis.centers[static_cast<size_t>(k)];
    const int ie = eid % ext.enx(), je = eid / ext.enx();
    const Real area = ext.ehx(ie) * ext.ehy(je);
    coeffs[k] = ((ie + je) % 2 == 0 ? 1.0 : -1.0) * area;
    cmax = std::max(cmax, area);
  }
  Real worst = 0.0;
  for (int cj = 0; cj < g.ny(); ++cj)
    for (int ci = 0; ci < g.nx(); ++ci) {
      if (!g.is_active(ci, cj)) continue;
      worst = std::max(worst, combine_on_cell(d.basis, coeffs, ci, cj).cwiseAbs().maxCoeff());
    }
  return worst / cmax;
}

InterpolationStudy interpolation_study(const Domain& domain, GridKind kind,
                                       const std::vector<int>& levels, Real theta) {
  check_levels(levels);
  const ExactField v = squared_sine_field();
  InterpolationStudy st;
  st.errors.resize(static_cast<Eigen::Index>(levels.size()), 3);
  for (size_t li = 0; li < levels.size(); ++li) {
    const Discretization d = discretize(domain, kind, levels[li], theta);
    const Vector coeffs =
        interpolate_interior(d.basis, [&v](Real x, Real y) { return v.value(x, y); });
    for (int k = 0; k <= 2; ++k)
      st.errors(static_cast<Eigen::Index>(li), k) = broken_seminorm_error(v, coeffs, d.basis, k);
    st.h.push_back(d.h);
  }
  st.rates = norm_rate_table(st.h, {"error_k0", "error_k1", "error_k2"}, st.errors);
  return st;
}

}  // namespace rrm
