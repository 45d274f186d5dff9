/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "uqc/catalysis.hpp"

#include <cmath>
#include <sstream>

#include "uqc/linalg.hpp"

namespace uqc {

namespace {

constexpr double kBasePointTol = 1e-8;
constexpr double kScalingTol = 1e-5;

ChoiOperator power_choi_impl(const FuncExprPtr& f, const Matrix& u0, int n) {
  if (n <= 0) throw InvalidInput("power_map_choi: the power must be positive");
  const int d = f->dim;
  const Matrix f_u0 = evaluate(f, u0);
  const double base_defect = (f_u0 - Matrix::Identity(d, d)).norm();
  if (base_defect > kBasePointTol) {
    std::ostringstream msg;
    msg << "power_map_choi: base point violates f(U0) = I, ||f(U0) - I||_F = " << base_defect;
    throw InvalidInput(msg.str());
  }

  const OperatorBasis basis = gellmann_basis(d);
  ChoiOperator base = choi(dsl_derivative(f, u0), basis);

  ChoiOperator scaled;
  scaled.local_dim = d;
  scaled.mat = static_cast<double>(n) * base.mat;
  scaled.source = base.source + ":power" + std::to_string(n);

  // Independent route: product-rule derivative of the written-out n-fold
  // product f * f * ... * f.
  FuncExprPtr product = f;
  for (int i = 1; i < n; ++i) product = make_product(f, product);
  const ChoiOperator via_product = choi(dsl_derivative(product, u0), basis);
  const double mismatch = (via_product.mat - scaled.mat).norm();
  if (mismatch > 1e-7) {
    std::ostringstream msg;
    msg << "power_map_choi: scaling disagrees with the product-rule route by " << mismatch;
    throw NumericalFailure(msg.str());
  }
  return scaled;
}

}  // namespace

ChoiOperator power_map_choi(const FuncExprPtr& f, const Matrix& u0, int n) {
  return power_choi_impl(f, u0, n);
}

ChoiOperator power_map_choi(const TaskSpec& task, const Matrix& u0, int n) {
  const int d = static_cast<int>(u0.rows());
  return power_choi_impl(task_expr(task, d), u0, n);
}

std::optional<int> default_achievable(const TaskSpec& task, int d) {
  if (task.subgroup != Subgroup::full) return std::nullopt;
  switch (task.kind) {
    case TaskKind::inversion:
      return d == 2 ? std::optional<int>(4) : std::nullopt;
    case TaskKind::transposition:
      return d == 2 ? std::optional<int>(4) : std::nullopt;
    case TaskKind::conjugation:
      return d - 1;
    case TaskKind::iteration:
      return task.iteration_n;
  }
  return std::nullopt;
}

CatalysisVerdict catalysis_verdict(const TaskSpec& task, int d,
                                   std::optional<int> known_achievable,
                                   const SolverOptions& options) {
  if (task.subgroup != Subgroup::full) {
    throw InvalidInput("catalysis_verdict: defined for unrestricted tasks only");
  }
  const Matrix u0 = Matrix::Identity(d, d);
  const FuncExprPtr f = task_expr(task, d);

  CatalysisVerdict verdict;
  verdict.task = task_name(task);
  verdict.d = d;
  verdict.base_point_defect = (evaluate(f, u0) - u0).norm();
  verdict.known_achievable_n = known_achievable ? known_achievable : default_achievable(task, d);

  const ChoiOperator j = choi(dsl_derivative(f, u0), gellmann_basis(d));
  SdpSolution base = solve_primal(j, options);
  verdict.sdp_value = base.primal_value;
  verdict.status = base.status;

  bool scaling_ok = true;
  for (int n : {2, 3}) {
    SdpSolution powered = solve_primal(power_map_choi(f, u0, n), options);
    if (powered.status != SolveStatus::optimal) verdict.status = powered.status;
    const double ratio = powered.primal_value / base.primal_value;
    verdict.scaling.push_back(ScalingCheck{n, ratio});
    if (std::abs(powered.primal_value - n * base.primal_value) > kScalingTol) scaling_ok = false;
  }

  const bool base_ok = verdict.base_point_defect <= kBasePointTol;
  const bool tight = verdict.known_achievable_n &&
                     std::abs(verdict.sdp_value - *verdict.known_achievable_n) <= kScalingTol;
  verdict.ruled_out = base_ok && scaling_ok && tight;
  return verdict;
}

}  // namespace uqc
