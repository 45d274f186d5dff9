/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "uqc/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <sstream>

#include "uqc/linalg.hpp"

namespace uqc {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::max_iter: return "max_iter";
  }
  return "unknown";
}

namespace {

// [[Re M, -Im M], [Im M, Re M]]; M >= 0 iff the embedding is, and
// log det of the embedding doubles the complex value.
RealMatrix real_embed(const Matrix& m) {
  const auto n = m.rows();
  RealMatrix r(2 * n, 2 * n);
  r.topLeftCorner(n, n) = m.real();
  r.topRightCorner(n, n) = -m.imag();
  r.bottomLeftCorner(n, n) = m.imag();
  r.bottomRightCorner(n, n) = m.real();
  return r;
}

Matrix complex_unembed(const RealMatrix& r) {
  const auto n = r.rows() / 2;
  Matrix m(n, n);
  m.real() = 0.5 * (r.topLeftCorner(n, n) + r.bottomRightCorner(n, n));
  m.imag() = 0.5 * (r.bottomLeftCorner(n, n) - r.topRightCorner(n, n));
  return m;
}

struct EmbeddedBlock {
  RealMatrix f0;
  std::vector<RealMatrix> fi;
  Eigen::Index n = 0;  // embedded size (2x complex size)
};

}  // namespace

ConeSolution solve_cone(const ConeProblem& problem, const SolverOptions& options) {
  const int nvars = static_cast<int>(problem.cost.size());
  if (problem.start.size() != nvars) {
    throw InvalidInput("solve_cone: start point has the wrong length");
  }

  std::vector<EmbeddedBlock> blocks;
  blocks.reserve(problem.blocks.size());
  double nu = 0.0;
  for (const ConeBlock& b : problem.blocks) {
    if (static_cast<int>(b.fi.size()) != nvars) {
      throw InvalidInput("solve_cone: coefficient count mismatch");
    }
    EmbeddedBlock eb;
    eb.f0 = real_embed(hermitian_part(b.f0));
    eb.fi.reserve(nvars);
    for (const Matrix& f : b.fi) eb.fi.push_back(real_embed(hermitian_part(f)));
    eb.n = eb.f0.rows();
    nu += static_cast<double>(eb.n);
    blocks.push_back(std::move(eb));
  }

  const int nblocks = static_cast<int>(blocks.size());
  RealVector x = problem.start;

  auto slack_at = [&](const RealVector& point, int b) {
    RealMatrix s = blocks[b].f0;
    for (int i = 0; i < nvars; ++i) s.noalias() += point(i) * blocks[b].fi[i];
    return s;
  };

  auto strictly_feasible = [&](const RealVector& point) {
    for (int b = 0; b < nblocks; ++b) {
      Eigen::LLT<RealMatrix> llt(slack_at(point, b));
      if (llt.info() != Eigen::Success) return false;
    }
    return true;
  };

  if (!strictly_feasible(x)) {
    throw InvalidInput("solve_cone: start point is not strictly feasible");
  }

  ConeSolution sol;
  sol.status = SolveStatus::optimal;

  double t = options.t0;
  std::vector<Eigen::LLT<RealMatrix>> llts(nblocks);
  RealMatrix hessian(nvars, nvars);
  RealVector grad(nvars), delta(nvars);
  std::vector<RealMatrix> wflat(nblocks);
  for (int b = 0; b < nblocks; ++b) wflat[b].resize(nvars, blocks[b].n * blocks[b].n);
  RealMatrix wtmp;

  bool out_of_budget = false;
  while (true) {
    // Center at the current t by damped Newton steps; the step size
    // 1/(1 + lambda) guarantees descent and cone feasibility for the
    // self-concordant log-det barrier without evaluating the merit function,
    // which loses precision once t cost.x dominates it.
    double prev_lambda2 = std::numeric_limits<double>::infinity();
    while (true) {
      bool ok = true;
      for (int b = 0; b < nblocks; ++b) {
        llts[b].compute(slack_at(x, b));
        if (llts[b].info() != Eigen::Success) ok = false;
      }
      if (!ok) throw NumericalFailure("solve_cone: iterate left the cone");

      grad = t * problem.cost;
      hessian.setZero();
      for (int b = 0; b < nblocks; ++b) {
        const auto nb = blocks[b].n;
        for (int i = 0; i < nvars; ++i) {
          // W_i = L^{-1} F_i L^{-T}
          wtmp = blocks[b].fi[i];
          llts[b].matrixL().solveInPlace(wtmp);
          wtmp.transposeInPlace();
          llts[b].matrixL().solveInPlace(wtmp);
          grad(i) -= wtmp.trace();
          wflat[b].row(i) = Eigen::Map<const RealVector>(wtmp.data(), nb * nb);
        }
        hessian.noalias() += wflat[b] * wflat[b].transpose();
      }

      RealMatrix reg = hessian;
      const double ridge = 1e-13 * std::max(1.0, hessian.trace() / nvars);
      reg.diagonal().array() += ridge;
      delta = Eigen::LDLT<RealMatrix>(reg).solve(-grad);

      const double lambda2 = -grad.dot(delta);
      // The decrement alone is an H-norm test and tolerates large gradient
      // components along stiff (nearly active) directions, which is exactly
      // where the recovered dual picks up its feasibility defect; require a
      // small plain gradient as well.
      const double grad_tol = 1e-11 * std::max(1.0, t);
      if (!(lambda2 > 2.0 * options.center_tol) &&
          grad.lpNorm<Eigen::Infinity>() <= grad_tol) {
        break;
      }
      // In the quadratic phase the decrement shrinks monotonically in exact
      // arithmetic; a non-decrease there means the floating-point floor.
      if (lambda2 >= prev_lambda2 && prev_lambda2 < 0.0625) break;
      prev_lambda2 = lambda2;

      const double lambda = std::sqrt(std::max(lambda2, 0.0));
      double alpha = lambda <= 0.25 ? 1.0 : 1.0 / (1.0 + lambda);
      while (alpha > 1e-14 && !strictly_feasible(x + alpha * delta)) alpha *= 0.5;
      if (alpha <= 1e-14) break;
      x += alpha * delta;

      if (++sol.newton_steps >= options.max_newton) {
        sol.status = SolveStatus::max_iter;
        out_of_budget = true;
        break;
      }
    }

    const double value_now = problem.cost.dot(x);
    if (options.stop_when_value_below && value_now < *options.stop_when_value_below) break;
    if (options.stop_when_lower_bound_above &&
        value_now - nu / t > *options.stop_when_lower_bound_above) {
      break;
    }
    if (out_of_budget || nu / t <= options.gap_tol) break;
    t = std::min(t * options.mu, nu / options.gap_tol);
  }

  sol.x = x;
  sol.value = problem.cost.dot(x);
  sol.barrier_gap = nu / t;
  sol.slack.reserve(nblocks);
  sol.dual.reserve(nblocks);
  for (int b = 0; b < nblocks; ++b) {
    const RealMatrix s = slack_at(x, b);
    Eigen::LLT<RealMatrix> llt(s);
    if (llt.info() != Eigen::Success) throw NumericalFailure("solve_cone: final slack not PD");
    const RealMatrix inv = llt.solve(RealMatrix::Identity(s.rows(), s.cols()));
    sol.slack.push_back(complex_unembed(s));
    sol.dual.push_back(hermitian_part(complex_unembed((2.0 / t) * inv)));
  }
  return sol;
}

namespace {

// Orthonormal Hermitian basis of the n x n Hermitian matrices: diagonal units
// first, then the normalized symmetric and antisymmetric pairs.
std::vector<Matrix> hermitian_unit_basis(int n) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    Matrix e = Matrix::Zero(n, n);
    e(j, j) = 1.0;
    basis.push_back(std::move(e));
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Matrix e = Matrix::Zero(n, n);
      e(j, k) = s;
      e(k, j) = s;
      basis.push_back(std::move(e));
      Matrix f = Matrix::Zero(n, n);
      f(j, k) = Complex(0.0, -s);
      f(k, j) = Complex(0.0, s);
      basis.push_back(std::move(f));
    }
  return basis;
}

double hs_inner(const Matrix& a, const Matrix& b) {
  return (a.adjoint() * b).trace().real();
}

// tr_1[(w (x) I) x] for an operator x on C^d (x) C^d.
Matrix trace_out_first(const Matrix& w, const Matrix& x, int d) {
  Matrix out = Matrix::Zero(d, d);
  for (int q = 0; q < d; ++q)
    for (int qp = 0; qp < d; ++qp) {
      Complex acc = 0.0;
      for (int p = 0; p < d; ++p)
        for (int r = 0; r < d; ++r) acc += w(p, r) * x(r * d + q, p * d + qp);
      out(q, qp) = acc;
    }
  return out;
}

// Restores exact dual feasibility.  The marginal is fixed by the congruence
// (X (x) I) Gamma (X (x) I) with X = (tr_2 Gamma)^{-1/2}, which keeps the
// operator PSD and, unlike an additive shift, keeps the objective mass the
// barrier point carries along nearly active directions.  A final additive
// touch-up and a blend toward the maximally mixed feasible point absorb
// rounding at the 1e-14 level.
Matrix restore_dual_feasibility(const Matrix& gamma_in, int d) {
  const Matrix identity = Matrix::Identity(d, d);
  Matrix gamma = hermitian_part(gamma_in);

  Eigen::SelfAdjointEigenSolver<Matrix> marginal(partial_trace(gamma, 2));
  if (marginal.eigenvalues().minCoeff() <= 0.0) {
    throw NumericalFailure("restore_dual_feasibility: marginal not positive definite");
  }
  const Matrix x_half = marginal.operatorInverseSqrt();
  const Matrix lift = kron(x_half, identity);
  gamma = hermitian_part(lift * gamma * lift.adjoint());

  const Matrix defect = identity - partial_trace(gamma, 2);
  gamma += kron(defect, identity) / d;

  const double lambda_min = min_eigenvalue(gamma);
  if (lambda_min < 0.0) {
    const double theta = std::min(1.0, 1.05 * (-lambda_min) / ((-lambda_min) + 1.0 / d));
    gamma = (1.0 - theta) * gamma + theta * Matrix::Identity(d * d, d * d) / d;
  }
  return hermitian_part(gamma);
}

void check_choi_input(const ChoiOperator& j, const char* what) {
  const int d = j.local_dim;
  if (d < 2) throw InvalidInput(std::string(what) + ": local dimension must be at least 2");
  if (j.mat.rows() != d * d || j.mat.cols() != d * d) {
    throw InvalidInput(std::string(what) + ": matrix is not d^2 x d^2");
  }
  require_hermitian(j.mat, kExternalTol, what);
}

SdpSolution primal_like_solve(const ChoiOperator& j, const OperatorBasis& complement,
                              const SolverOptions& options) {
  check_choi_input(j, "solve_primal");
  const int d = j.local_dim;
  const int n2 = d * d;
  const Matrix identity = Matrix::Identity(d, d);

  // Degenerate map: nothing to certify.
  if (j.mat.norm() < 1e-14 && complement.size() == 0) {
    SdpSolution sol;
    sol.beta = Matrix::Zero(d, d);
    sol.gamma = Matrix::Identity(n2, n2) / d;
    return sol;
  }

  const std::vector<Matrix> beta_basis = hermitian_unit_basis(d);
  const OperatorBasis traceless = gellmann_basis(d);

  ConeProblem prob;
  ConeBlock block;
  block.f0 = j.mat;

  std::vector<std::pair<int, int>> complement_coords;  // (complement k, traceless m)
  const int nbeta = static_cast<int>(beta_basis.size());
  const int nfree = complement.size() * traceless.size();
  prob.cost = RealVector::Zero(nbeta + nfree);
  prob.start = RealVector::Zero(nbeta + nfree);

  block.fi.reserve(nbeta + nfree);
  for (int i = 0; i < nbeta; ++i) {
    block.fi.push_back(kron(beta_basis[i], identity));
    prob.cost(i) = beta_basis[i].trace().real();
  }
  for (int k = 0; k < complement.size(); ++k) {
    const Matrix bk_conj = complement.elements[k].conjugate();
    for (int m = 0; m < traceless.size(); ++m) {
      block.fi.push_back(kron(bk_conj, traceless.elements[m]));
      complement_coords.emplace_back(k, m);
    }
  }

  const double lambda0 = std::max(1.0, -1.05 * min_eigenvalue(j.mat) + 0.5);
  for (int jdx = 0; jdx < d; ++jdx) prob.start(jdx) = lambda0;  // beta = lambda0 I

  prob.blocks.push_back(std::move(block));
  ConeSolution cone = solve_cone(prob, options);

  SdpSolution sol;
  sol.status = cone.status;
  sol.newton_steps = cone.newton_steps;
  sol.beta = Matrix::Zero(d, d);
  for (int i = 0; i < nbeta; ++i) sol.beta += cone.x(i) * beta_basis[i];
  sol.beta = hermitian_part(sol.beta);
  sol.primal_value = sol.beta.trace().real();

  if (complement.size() > 0) {
    sol.free_complement.assign(complement.size(), Matrix::Zero(d, d));
    for (int idx = 0; idx < nfree; ++idx) {
      const auto [k, m] = complement_coords[idx];
      sol.free_complement[k] += cone.x(nbeta + idx) * traceless.elements[m];
    }
  }

  // The barrier dual is feasible up to the Newton residual; restore the
  // constraints exactly before reporting it.
  sol.gamma = restore_dual_feasibility(cone.dual[0], d);
  sol.dual_value = -(j.mat * sol.gamma).trace().real();
  sol.gap = sol.primal_value - sol.dual_value;
  return sol;
}

SdpSolution dual_like_solve(const ChoiOperator& j, const OperatorBasis& complement,
                            const SolverOptions& options) {
  check_choi_input(j, "solve_dual");
  const int d = j.local_dim;
  const int n2 = d * d;

  const std::vector<Matrix> gamma_basis = hermitian_unit_basis(n2);
  const std::vector<Matrix> out_basis = hermitian_unit_basis(d);
  const int ncoords = static_cast<int>(gamma_basis.size());  // d^4

  // Linear constraints on Gamma in Hermitian coordinates:
  //   tr_2 Gamma = I   and   tr_1[(B_k^* (x) I) Gamma] = 0 for each k.
  const int nrows = n2 * (1 + complement.size());
  RealMatrix constraints(nrows, ncoords);
  for (int a = 0; a < ncoords; ++a) {
    const Matrix tr2 = partial_trace(gamma_basis[a], 2);
    for (int r = 0; r < n2; ++r) constraints(r, a) = hs_inner(out_basis[r], tr2);
    for (int k = 0; k < complement.size(); ++k) {
      const Matrix tr1 = trace_out_first(complement.elements[k].conjugate(), gamma_basis[a], d);
      for (int r = 0; r < n2; ++r) {
        constraints(n2 * (1 + k) + r, a) = hs_inner(out_basis[r], tr1);
      }
    }
  }

  Eigen::JacobiSVD<RealMatrix> svd(constraints, Eigen::ComputeFullV);
  const RealVector& sigma = svd.singularValues();
  const double sig_tol = 1e-10 * std::max(1.0, sigma.size() > 0 ? sigma(0) : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > sig_tol) ++rank;
  const int nfree = ncoords - rank;

  // Gamma0 = I/d satisfies every constraint and is strictly interior.
  const Matrix gamma0 = Matrix::Identity(n2, n2) / d;

  ConeProblem prob;
  ConeBlock block;
  block.f0 = gamma0;
  prob.cost = RealVector::Zero(nfree);
  prob.start = RealVector::Zero(nfree);
  block.fi.reserve(nfree);
  std::vector<Matrix> directions;
  directions.reserve(nfree);
  for (int idx = 0; idx < nfree; ++idx) {
    const RealVector coord = svd.matrixV().col(rank + idx);
    Matrix dir = Matrix::Zero(n2, n2);
    for (int a = 0; a < ncoords; ++a) {
      if (std::abs(coord(a)) > 1e-15) dir += coord(a) * gamma_basis[a];
    }
    dir = hermitian_part(dir);
    prob.cost(idx) = (j.mat * dir).trace().real();  // minimize tr(J Gamma)
    block.fi.push_back(dir);
    directions.push_back(std::move(dir));
  }
  prob.blocks.push_back(std::move(block));

  ConeSolution cone = solve_cone(prob, options);

  SdpSolution sol;
  sol.status = cone.status;
  sol.newton_steps = cone.newton_steps;

  Matrix gamma = gamma0;
  for (int idx = 0; idx < nfree; ++idx) gamma += cone.x(idx) * directions[idx];
  sol.gamma = restore_dual_feasibility(gamma, d);
  sol.dual_value = -(j.mat * sol.gamma).trace().real();

  // At centrality (2/t) Gamma^{-1} - J lies in the span of beta (x) I and the
  // complement directions, which is exactly a feasible primal point.
  const Matrix certificate = cone.dual[0];
  const Matrix residue = certificate - j.mat;
  sol.beta = hermitian_part(partial_trace(residue, 2) / d);
  for (int k = 0; k < complement.size(); ++k) {
    const Matrix bk = traceless_part(
        hermitian_part(trace_out_first(complement.elements[k].conjugate(), residue, d)));
    sol.free_complement.push_back(bk);
  }
  // Project out drift so the recovered point is genuinely feasible.
  Matrix slack_rec = j.mat + kron(sol.beta, Matrix::Identity(d, d));
  for (int k = 0; k < complement.size(); ++k) {
    slack_rec += kron(complement.elements[k].conjugate(), sol.free_complement[k]);
  }
  const double lambda_min = min_eigenvalue(slack_rec);
  if (lambda_min < 0.0) {
    sol.beta += Matrix::Identity(d, d) * (1.05 * (-lambda_min));
  }
  sol.primal_value = sol.beta.trace().real();
  sol.gap = sol.primal_value - sol.dual_value;
  return sol;
}

}  // namespace

SdpSolution solve_primal(const ChoiOperator& j, const SolverOptions& options) {
  OperatorBasis empty;
  empty.dim = j.local_dim;
  return primal_like_solve(j, empty, options);
}

SdpSolution solve_subgroup(const ChoiOperator& j_fixed, const OperatorBasis& complement,
                           const SolverOptions& options) {
  return primal_like_solve(j_fixed, complement, options);
}

SdpSolution solve_dual(const ChoiOperator& j, const SolverOptions& options) {
  OperatorBasis empty;
  empty.dim = j.local_dim;
  return dual_like_solve(j, empty, options);
}

SdpSolution solve_dual_subgroup(const ChoiOperator& j_fixed, const OperatorBasis& complement,
                                const SolverOptions& options) {
  return dual_like_solve(j_fixed, complement, options);
}

std::optional<RefinedBound> refined_bound(TaskKind task, int d) {
  switch (task) {
    case TaskKind::inversion:
      return RefinedBound{static_cast<double>(d) * d, std::nullopt};
    case TaskKind::transposition: {
      if (d == 2) return RefinedBound{4.0, std::nullopt};
      const double sharp = d + 3.0 - d / (2.0 * (d - 1.0));
      return RefinedBound{static_cast<double>(d + 3), sharp};
    }
    case TaskKind::conjugation:
      return RefinedBound{static_cast<double>(d - 1), std::nullopt};
    case TaskKind::iteration:
      return std::nullopt;
  }
  return std::nullopt;
}

long round_up_queries(double value) {
  return static_cast<long>(std::ceil(value - 1e-6));
}

}  // namespace uqc
