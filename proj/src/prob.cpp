/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "uqc/prob.hpp"

#include <cmath>

#include "uqc/linalg.hpp"

namespace uqc {

namespace {

double ratio_from_p(double p) { return (1.0 - std::sqrt(p)) / (1.0 + std::sqrt(p)); }

double p_from_ratio(double r) {
  const double s = (1.0 - r) / (1.0 + r);
  return s * s;
}

struct FeasibilityResult {
  bool feasible = false;
  Matrix beta, j_b;
  SolveStatus status = SolveStatus::optimal;
};

// Feasibility at fixed p < 1 as a max-slack program: with the traces pinned
// (tr beta = N, tr J_B = t_B = r N d / (1 - r)), maximize t subject to
// J + beta (x) I + J_B >= t I and J_B >= 0; the system is feasible iff the
// optimum is nonnegative.
FeasibilityResult probe_feasibility(const ChoiOperator& j, int n_queries, double p,
                                    const SolverOptions& options) {
  const int d = j.local_dim;
  const int n2 = d * d;
  const double r = ratio_from_p(p);
  const double trace_jb = r * n_queries * d / (1.0 - r);

  const Matrix identity_d = Matrix::Identity(d, d);
  const Matrix identity_2 = Matrix::Identity(n2, n2);
  const OperatorBasis beta_dirs = gellmann_basis(d);
  const OperatorBasis jb_dirs = gellmann_basis(n2);

  const int nbeta = beta_dirs.size();
  const int njb = jb_dirs.size();
  const int nvars = 1 + nbeta + njb;  // t, traceless beta, traceless J_B

  const Matrix base =
      j.mat + (static_cast<double>(n_queries) / d) * identity_2 + (trace_jb / n2) * identity_2;

  ConeProblem prob;
  prob.cost = RealVector::Zero(nvars);
  prob.cost(0) = -1.0;  // maximize t
  prob.start = RealVector::Zero(nvars);

  ConeBlock main_block;   // J + beta (x) I + J_B - t I
  main_block.f0 = base;
  ConeBlock psd_block;    // J_B
  psd_block.f0 = (trace_jb / n2) * identity_2;

  main_block.fi.reserve(nvars);
  psd_block.fi.reserve(nvars);
  const Matrix zero2 = Matrix::Zero(n2, n2);

  main_block.fi.push_back(-identity_2);
  psd_block.fi.push_back(zero2);
  for (int i = 0; i < nbeta; ++i) {
    main_block.fi.push_back(kron(beta_dirs.elements[i], identity_d));
    psd_block.fi.push_back(zero2);
  }
  for (int m = 0; m < njb; ++m) {
    main_block.fi.push_back(jb_dirs.elements[m]);
    psd_block.fi.push_back(jb_dirs.elements[m]);
  }

  const double base_floor = min_eigenvalue(base);
  prob.start(0) = base_floor - 0.1 * std::max(1.0, std::abs(base_floor));
  prob.blocks.push_back(std::move(main_block));
  prob.blocks.push_back(std::move(psd_block));

  // Only the sign of the optimal t matters here.
  SolverOptions probe_options = options;
  probe_options.stop_when_value_below = 0.0;        // found t > 0: feasible
  probe_options.stop_when_lower_bound_above = 1e-9; // certified t < -1e-9
  ConeSolution cone = solve_cone(prob, probe_options);

  FeasibilityResult result;
  result.status = cone.status;
  const double t_star = cone.x(0);
  result.feasible = t_star >= -1e-9;

  Matrix beta = (static_cast<double>(n_queries) / d) * identity_d;
  for (int i = 0; i < nbeta; ++i) beta += cone.x(1 + i) * beta_dirs.elements[i];
  Matrix j_b = (trace_jb / n2) * identity_2;
  for (int m = 0; m < njb; ++m) j_b += cone.x(1 + nbeta + m) * jb_dirs.elements[m];
  result.beta = hermitian_part(beta);
  result.j_b = hermitian_part(j_b);
  return result;
}

void check_inputs(const ChoiOperator& j, int n_queries) {
  if (n_queries < 1) throw InvalidInput("probabilistic bound: need at least one query");
  if (j.local_dim < 2 || j.mat.rows() != j.local_dim * j.local_dim) {
    throw InvalidInput("probabilistic bound: malformed Choi operator");
  }
}

}  // namespace

ProbSolution max_success_probability(const ChoiOperator& j, int n_queries,
                                     const SolverOptions& options) {
  check_inputs(j, n_queries);
  const int d = j.local_dim;
  const Matrix identity_d = Matrix::Identity(d, d);

  ProbSolution sol;
  sol.d = d;
  sol.n_queries = n_queries;
  sol.method = "sdp_bisection";

  // p = 1 forces J_B = 0, which is exactly deterministic feasibility.  The
  // deterministic value carries the solver's ~1e-7 bias above the optimum, so
  // an integer budget within 1e-6 of it already covers the exact optimum.
  SdpSolution det = solve_primal(j, options);
  sol.status = det.status;
  if (n_queries >= det.primal_value - 1e-6) {
    Matrix beta = det.beta + ((n_queries - det.primal_value) / d) * identity_d;
    sol.max_p = 1.0;
    sol.beta = beta;
    sol.j_a = j.mat + kron(beta, identity_d);
    sol.j_b = Matrix::Zero(d * d, d * d);
    return sol;
  }

  double lo = 0.0;  // vacuous success level, always attainable
  double hi = 1.0;  // just shown infeasible at this budget
  FeasibilityResult best;
  for (int iter = 0; iter < 30; ++iter) {
    const double mid = 0.5 * (lo + hi);
    FeasibilityResult probe = probe_feasibility(j, n_queries, mid, options);
    if (probe.status == SolveStatus::max_iter) sol.status = SolveStatus::max_iter;
    if (probe.feasible) {
      lo = mid;
      best = probe;
    } else {
      hi = mid;
    }
  }

  sol.max_p = lo;
  if (best.feasible) {
    sol.beta = best.beta;
    sol.j_b = best.j_b;
    sol.j_a = j.mat + kron(best.beta, identity_d) + best.j_b;
  } else {
    sol.beta = (static_cast<double>(n_queries) / d) * identity_d;
    sol.j_a = Matrix::Zero(d * d, d * d);
    sol.j_b = Matrix::Zero(d * d, d * d);
  }
  return sol;
}

ProbSolution min_trace_norm_path(const ChoiOperator& j, int n_queries,
                                 const SolverOptions& options) {
  check_inputs(j, n_queries);
  const int d = j.local_dim;
  const int n2 = d * d;
  const Matrix identity_d = Matrix::Identity(d, d);
  const Matrix identity_2 = Matrix::Identity(n2, n2);

  // a = min tr(P + Q) with P - Q = J + beta (x) I, P, Q >= 0, tr beta = N;
  // eliminating P leaves  min N d + 2 tr Q.
  const OperatorBasis beta_dirs = gellmann_basis(d);
  const std::vector<Matrix> q_units = [&] {
    OperatorBasis traceless = gellmann_basis(n2);
    std::vector<Matrix> units = std::move(traceless.elements);
    return units;
  }();

  const int nbeta = beta_dirs.size();
  const int nq_traceless = static_cast<int>(q_units.size());
  const int nvars = 1 + nbeta + nq_traceless;  // tr Q scale, beta dirs, Q dirs

  const Matrix base = j.mat + (static_cast<double>(n_queries) / d) * identity_2;

  ConeProblem prob;
  prob.cost = RealVector::Zero(nvars);
  prob.cost(0) = 2.0 * n2;  // tr Q = n2 * q0 with Q = q0 I + traceless
  prob.start = RealVector::Zero(nvars);

  ConeBlock p_block;  // P = base + Q
  p_block.f0 = base;
  ConeBlock q_block;  // Q
  q_block.f0 = Matrix::Zero(n2, n2);

  const Matrix zero2 = Matrix::Zero(n2, n2);
  p_block.fi.push_back(identity_2);
  q_block.fi.push_back(identity_2);
  for (int i = 0; i < nbeta; ++i) {
    p_block.fi.push_back(kron(beta_dirs.elements[i], identity_d));
    q_block.fi.push_back(zero2);
  }
  for (int m = 0; m < nq_traceless; ++m) {
    p_block.fi.push_back(q_units[m]);
    q_block.fi.push_back(q_units[m]);
  }

  prob.start(0) = std::max(1.0, -1.05 * min_eigenvalue(base) + 0.5);
  prob.blocks.push_back(std::move(p_block));
  prob.blocks.push_back(std::move(q_block));

  ConeSolution cone = solve_cone(prob, options);

  ProbSolution sol;
  sol.d = d;
  sol.n_queries = n_queries;
  sol.method = "trace_norm";
  sol.status = cone.status;

  Matrix beta = (static_cast<double>(n_queries) / d) * identity_d;
  for (int i = 0; i < nbeta; ++i) beta += cone.x(1 + i) * beta_dirs.elements[i];
  Matrix q = cone.x(0) * identity_2;
  for (int m = 0; m < nq_traceless; ++m) q += cone.x(1 + nbeta + m) * q_units[m];

  sol.beta = hermitian_part(beta);
  sol.j_b = hermitian_part(q);
  sol.j_a = j.mat + kron(sol.beta, identity_d) + sol.j_b;
  sol.a_value = n_queries * d + cone.value;
  const double r = std::max(0.0, (sol.a_value - n_queries * d) / (sol.a_value + n_queries * d));
  sol.max_p = p_from_ratio(r);
  return sol;
}

double closed_form_curve(TaskKind task, int d, int n_queries) {
  if (n_queries < 1) throw InvalidInput("closed_form_curve: need at least one query");
  if (d < 2) throw InvalidInput("closed_form_curve: dimension must be at least 2");
  const double n = n_queries;
  double value = 1.0;
  switch (task) {
    case TaskKind::transposition: {
      const double denom = (d * d - 1.0) / n + 1.0;
      value = (d / denom) * (d / denom);
      break;
    }
    case TaskKind::inversion: {
      const double denom = (2.0 * d * d - 2.0) / n + d * d - 2.0;
      value = (d * d / denom) * (d * d / denom);
      break;
    }
    case TaskKind::conjugation: {
      const double denom = (d * d - 1.0) / n - 1.0;
      if (denom <= 0.0) return 1.0;  // vacuous
      value = (d / denom) * (d / denom);
      break;
    }
    case TaskKind::iteration:
      throw InvalidInput("closed_form_curve: no closed form for iteration");
  }
  return std::clamp(value, 0.0, 1.0);
}

double canonical_bound(const ChoiOperator& j, int n_queries) {
  check_inputs(j, n_queries);
  const double frob2 = j.mat.squaredNorm();
  if (frob2 < 1e-24) throw InvalidInput("canonical_bound: undefined for J = 0");
  const double value = n_queries * j.local_dim * operator_norm(j.mat) / frob2;
  return std::min(1.0, value * value);
}

}  // namespace uqc
