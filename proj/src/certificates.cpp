/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "uqc/certificates.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "uqc/linalg.hpp"

namespace uqc {

namespace {

constexpr double kFeasTol = 1e-10;

struct CertificateParts {
  Matrix j_tilde;  // fixed Choi part plus the analytic complement terms
  Matrix beta;
  std::vector<Matrix> complement_vars;
  std::vector<Matrix> complement_basis;
  Matrix gamma;
};

// Dual witness for the iteration task: the projector complementary to the
// span of the vectorized eigenprojectors of U0 (transposed, matching the
// conjugated first slot), normalized to unit marginal.
Matrix iteration_witness(const Matrix& u0, int d) {
  Eigen::ComplexSchur<Matrix> schur(u0);
  const Matrix& q = schur.matrixU();
  Matrix perp = Matrix::Identity(d * d, d * d);
  for (int j = 0; j < d; ++j) {
    const Matrix proj = q.col(j) * q.col(j).adjoint();
    const Vector v = vectorize(proj.transpose());
    perp -= v * v.adjoint();
  }
  return perp / (d - 1.0);
}

CertificateParts build_parts(const TaskSpec& task, int d, const Matrix& u0) {
  CertificateParts parts;
  const Matrix identity = Matrix::Identity(d, d);

  switch (task.subgroup) {
    case Subgroup::full:
      break;
    case Subgroup::so:
    case Subgroup::diag:
      if (task.kind != TaskKind::inversion) {
        throw InvalidInput("verify_certificate: subgroup certificates exist for inversion only");
      }
      break;
    case Subgroup::tensor:
      throw InvalidInput("verify_certificate: no closed-form certificate for tensor promises");
  }

  if (task.subgroup == Subgroup::so) {
    auto [sub, complement] = subalgebra_bases(d, SubalgebraKind::so);
    DerivativeMap g = analytic_derivative(TaskSpec{TaskKind::inversion}, u0);
    SubgroupChoi sc = choi_subgroup(g, sub, complement);

    const double a = (d - 2.0) / (2.0 * (d + 2.0));
    parts.beta = ((d - 1.0) / d) * identity;
    parts.j_tilde = sc.fixed.mat;
    for (const Matrix& b : complement.elements) {
      const Matrix bprime = 2.0 * a * b;
      parts.j_tilde += kron(b.conjugate(), bprime);
      parts.complement_vars.push_back(bprime);
      parts.complement_basis.push_back(b);
    }
    parts.gamma = (2.0 * antisym_projector(d) + max_entangled_dyad(d)) / d;
    return parts;
  }

  if (task.subgroup == Subgroup::diag) {
    auto [sub, complement] = subalgebra_bases(d, SubalgebraKind::diag);
    DerivativeMap g = analytic_derivative(TaskSpec{TaskKind::inversion}, u0);
    SubgroupChoi sc = choi_subgroup(g, sub, complement);

    parts.beta = ((d - 1.0) / d) * identity;
    parts.j_tilde = sc.fixed.mat;
    for (const Matrix& b : complement.elements) {
      parts.complement_vars.push_back(Matrix::Zero(d, d));
      parts.complement_basis.push_back(b);
    }
    Matrix gamma = Matrix::Zero(d * d, d * d);
    for (int j = 0; j < d; ++j) gamma(j * d + j, j * d + j) = 1.0;
    parts.gamma = gamma;
    return parts;
  }

  parts.j_tilde = task_choi(task, d, u0).mat;
  switch (task.kind) {
    case TaskKind::inversion:
      parts.beta = ((d * d - 1.0) / d) * identity;
      parts.gamma = max_entangled_dyad(d);
      break;
    case TaskKind::transposition:
      parts.beta = ((d + 1.0) / d) * identity;
      parts.gamma = 2.0 * antisym_projector(d) / (d - 1.0);
      break;
    case TaskKind::conjugation: {
      parts.beta = ((d - 1.0) / d) * identity;
      const Matrix frame = kron(identity, u0.transpose());
      parts.gamma = 2.0 * frame * sym_projector(d) * frame.adjoint() / (d + 1.0);
      break;
    }
    case TaskKind::iteration:
      parts.beta = (task.iteration_n / static_cast<double>(d)) * identity;
      parts.gamma = iteration_witness(u0, d);
      break;
  }
  return parts;
}

}  // namespace

double closed_form_value(const TaskSpec& task, int d) {
  if (task.subgroup == Subgroup::so || task.subgroup == Subgroup::diag) {
    if (task.kind != TaskKind::inversion) {
      throw InvalidInput("closed_form_value: subgroup rows exist for inversion only");
    }
    return d - 1.0;
  }
  if (task.subgroup == Subgroup::tensor) {
    // The tensor-promise optimum coincides with the single-copy optimum.
    return closed_form_value(TaskSpec{task.kind, task.iteration_n}, d);
  }
  switch (task.kind) {
    case TaskKind::inversion: return d * d - 1.0;
    case TaskKind::transposition: return d + 1.0;
    case TaskKind::conjugation: return d - 1.0;
    case TaskKind::iteration: return static_cast<double>(task.iteration_n);
  }
  throw InvalidInput("closed_form_value: unknown task");
}

Certificate verify_certificate(const TaskSpec& task, int d,
                               const std::optional<Matrix>& u0_opt) {
  if (d < 2) throw InvalidInput("verify_certificate: dimension must be at least 2");
  if (task.kind == TaskKind::iteration && task.iteration_n < 1) {
    throw InvalidInput("verify_certificate: iteration order must be positive");
  }
  const Matrix u0 = u0_opt.value_or(Matrix::Identity(d, d));
  require_unitary(u0, kExternalTol, "verify_certificate base point");

  CertificateParts parts = build_parts(task, d, u0);

  Certificate cert;
  cert.task = task_name(task);
  cert.d = d;
  cert.claimed_value = closed_form_value(task, d);
  cert.primal_beta = parts.beta;
  cert.primal_complement = parts.complement_vars;
  cert.dual_witness = parts.gamma;

  const Matrix identity = Matrix::Identity(d, d);
  const Matrix constraint = parts.j_tilde + kron(parts.beta, identity);
  cert.primal_min_eigenvalue = min_eigenvalue(constraint);
  cert.primal_value = parts.beta.trace().real();
  cert.primal_feasible = cert.primal_min_eigenvalue >= -kFeasTol;

  cert.dual_psd_min_eigenvalue = min_eigenvalue(parts.gamma);
  cert.dual_marginal_defect = (partial_trace(parts.gamma, 2) - identity).norm();
  double ortho = 0.0;
  for (const Matrix& b : parts.complement_basis) {
    Matrix y = Matrix::Zero(d, d);
    const Matrix lifted = kron(b.conjugate(), identity) * parts.gamma;
    y = partial_trace(lifted, 1);
    ortho = std::max(ortho, y.norm());
  }
  cert.dual_orthogonality_defect = ortho;
  cert.dual_feasible = cert.dual_psd_min_eigenvalue >= -kFeasTol &&
                       cert.dual_marginal_defect <= kFeasTol &&
                       cert.dual_orthogonality_defect <= kFeasTol;

  cert.dual_value = -(parts.j_tilde * parts.gamma).trace().real();
  cert.values_match = cert.primal_feasible && cert.dual_feasible &&
                      std::abs(cert.primal_value - cert.dual_value) <= 1e-8;
  return cert;
}

}  // namespace uqc
