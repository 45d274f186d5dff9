/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "uqc/derivative.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "uqc/linalg.hpp"

namespace uqc {

namespace {

std::function<Matrix(const Matrix&)> power_rule(const Matrix& u0, int k) {
  std::vector<Matrix> powers;  // powers[j] = U0^{-j} for k>0, U0^{+j} for k<0
  const Matrix step = k > 0 ? Matrix(u0.adjoint()) : u0;
  Matrix acc = Matrix::Identity(u0.rows(), u0.cols());
  const int m = std::abs(k);
  powers.push_back(acc);
  for (int j = 1; j <= m; ++j) {
    acc = step * acc;
    powers.push_back(acc);
  }
  if (k > 0) {
    return [powers, m](const Matrix& h) {
      Matrix out = Matrix::Zero(h.rows(), h.cols());
      for (int j = 1; j <= m; ++j) out += powers[j] * h * powers[j].adjoint();
      return out;
    };
  }
  return [powers, m](const Matrix& h) {
    Matrix out = Matrix::Zero(h.rows(), h.cols());
    for (int j = 0; j < m; ++j) out -= powers[j] * h * powers[j].adjoint();
    return out;
  };
}

std::function<Matrix(const Matrix&)> build_rule(const FuncExprPtr& f, const Matrix& u0) {
  switch (f->op) {
    case FuncOp::identity: {
      const Matrix u = u0;
      return [u](const Matrix& h) { return Matrix(u.adjoint() * h * u); };
    }
    case FuncOp::inverse:
      return [](const Matrix& h) { return Matrix(-h); };
    case FuncOp::transpose:
      return [](const Matrix& h) { return Matrix(h.transpose()); };
    case FuncOp::conjugate: {
      const Matrix ut = u0.transpose();
      const Matrix uc = u0.conjugate();
      return [ut, uc](const Matrix& h) { return Matrix(-ut * h.conjugate() * uc); };
    }
    case FuncOp::power:
      return power_rule(u0, f->power_k);
    case FuncOp::lmul: {
      const Matrix u = u0;
      return [u](const Matrix& h) { return Matrix(u.adjoint() * h * u); };
    }
    case FuncOp::rmul: {
      const Matrix w = u0 * f->fixed;
      return [w](const Matrix& h) { return Matrix(w.adjoint() * h * w); };
    }
    case FuncOp::sandwich: {
      const Matrix u = u0;
      const Matrix v = f->fixed;
      return [u, v](const Matrix& h) { return Matrix(v * u.adjoint() * h * u * v.adjoint()); };
    }
    case FuncOp::compose: {
      // Inner output perturbation sits to the right of V0 = f1(U0); conjugate
      // it back to a left perturbation before feeding the outer derivative.
      const Matrix v0 = evaluate(f->right, u0);
      auto inner = build_rule(f->right, u0);
      auto outer = build_rule(f->left, v0);
      return [v0, inner, outer](const Matrix& h) {
        return outer(Matrix(v0 * inner(h) * v0.adjoint()));
      };
    }
    case FuncOp::product: {
      const Matrix f2_u0 = evaluate(f->right, u0);
      auto g1 = build_rule(f->left, u0);
      auto g2 = build_rule(f->right, u0);
      return [f2_u0, g1, g2](const Matrix& h) {
        return Matrix(f2_u0.adjoint() * g1(h) * f2_u0 + g2(h));
      };
    }
  }
  throw InvalidInput("dsl_derivative: unknown node");
}

Matrix checked_base_point(const Matrix& u0, int expected_dim) {
  require_unitary(u0, kExternalTol, "derivative base point");
  if (u0.rows() != expected_dim) {
    throw InvalidInput("derivative base point has the wrong dimension");
  }
  return u0;
}

}  // namespace

DerivativeMap analytic_derivative(const TaskSpec& task, const Matrix& u0) {
  if (task.kind == TaskKind::iteration && task.iteration_n <= 0) {
    throw InvalidInput("analytic_derivative: iteration order must be positive");
  }
  const int d = static_cast<int>(u0.rows());
  FuncExprPtr expr = task_expr(TaskSpec{task.kind, task.iteration_n}, d);
  DerivativeMap map;
  map.dim = d;
  map.base_point = checked_base_point(u0, d);
  map.apply = build_rule(expr, map.base_point);
  map.provenance = "analytic";
  return map;
}

DerivativeMap dsl_derivative(const FuncExprPtr& f, const Matrix& u0) {
  DerivativeMap map;
  map.dim = f->dim;
  map.base_point = checked_base_point(u0, f->dim);
  map.apply = build_rule(f, map.base_point);
  map.provenance = "chain_rule";
  return map;
}

namespace {

DerivativeMap fd_map(std::function<Matrix(const Matrix&)> eval_f, const Matrix& u0,
                     double eps, bool richardson) {
  if (!(eps >= 1e-6 && eps <= 1e-2)) {
    throw InvalidInput("finite_difference_derivative: eps must lie in [1e-6, 1e-2]");
  }
  const Matrix f_u0 = eval_f(u0);
  const Matrix f_u0_inv = f_u0.adjoint();

  auto central = [eval_f, u0, f_u0_inv](const Matrix& h, double step) {
    const Matrix k_plus = mat_log_unitary(f_u0_inv * eval_f(expi_hermitian(step * h) * u0));
    const Matrix k_minus = mat_log_unitary(f_u0_inv * eval_f(expi_hermitian(-step * h) * u0));
    return Matrix((k_plus - k_minus) / (2.0 * step));
  };

  DerivativeMap map;
  map.dim = static_cast<int>(u0.rows());
  map.base_point = u0;
  map.apply = [central, eps, richardson](const Matrix& h) {
    Matrix g = central(h, eps);
    if (richardson) {
      const Matrix g_half = central(h, eps / 2.0);
      g = (4.0 * g_half - g) / 3.0;
    }
    return traceless_part(hermitian_part(g));
  };
  std::ostringstream tag;
  tag << "finite_difference(eps=" << eps << (richardson ? ",richardson)" : ")");
  map.provenance = tag.str();
  return map;
}

}  // namespace

DerivativeMap finite_difference_derivative(const FuncExprPtr& f, const Matrix& u0,
                                           double eps, bool richardson) {
  checked_base_point(u0, f->dim);
  auto eval_f = [f](const Matrix& u) { return evaluate(f, u); };
  return fd_map(eval_f, u0, eps, richardson);
}

DerivativeMap finite_difference_derivative(const TaskSpec& task, const Matrix& u0,
                                           double eps, bool richardson) {
  const int d = static_cast<int>(u0.rows());
  FuncExprPtr expr = task_expr(TaskSpec{task.kind, task.iteration_n}, d);
  return finite_difference_derivative(expr, u0, eps, richardson);
}

ChoiOperator choi(const DerivativeMap& g, const OperatorBasis& basis) {
  if (basis.tag != BasisTag::su_gellmann && basis.tag != BasisTag::su_pauli) {
    throw InvalidInput("choi: needs a full su basis; use choi_subgroup for restrictions");
  }
  if (basis.dim != g.dim) throw InvalidInput("choi: basis dimension mismatch");
  const int d = g.dim;
  if (basis.size() != d * d - 1) throw InvalidInput("choi: basis is not complete");

  Matrix j = Matrix::Zero(d * d, d * d);
  for (const Matrix& elem : basis.elements) {
    j += kron(elem.conjugate(), g.apply(elem));
  }
  j = hermitian_part(j);

  ChoiOperator out;
  out.local_dim = d;
  out.mat = std::move(j);
  out.source = g.provenance;
  return out;
}

SubgroupChoi choi_subgroup(const DerivativeMap& g, const OperatorBasis& sub,
                           const OperatorBasis& complement) {
  const int d = g.dim;
  if (sub.dim != d || (complement.size() > 0 && complement.dim != d)) {
    throw InvalidInput("choi_subgroup: basis dimension mismatch");
  }
  if (sub.size() + complement.size() != d * d - 1) {
    throw InvalidInput("choi_subgroup: sub and complement do not span the traceless operators");
  }
  if (d <= 10) {
    std::vector<Matrix> joint = sub.elements;
    joint.insert(joint.end(), complement.elements.begin(), complement.elements.end());
    if (gram_defect(joint) > 1e-10) {
      throw InvalidInput("choi_subgroup: sub and complement are not jointly orthonormal");
    }
  }

  Matrix j = Matrix::Zero(d * d, d * d);
  for (const Matrix& elem : sub.elements) {
    j += kron(elem.conjugate(), g.apply(elem));
  }
  j = hermitian_part(j);

  SubgroupChoi out;
  out.fixed.local_dim = d;
  out.fixed.mat = std::move(j);
  out.fixed.source = g.provenance + ":subgroup";
  out.complement = complement;
  return out;
}

ChoiOperator task_choi(const TaskSpec& task, int d, const Matrix& u0) {
  DerivativeMap g = analytic_derivative(task, u0);
  return choi(g, gellmann_basis(d));
}

SubgroupChoi task_subgroup_choi(const TaskSpec& task, int d, const Matrix& u0) {
  switch (task.subgroup) {
    case Subgroup::full: {
      SubgroupChoi out;
      out.fixed = task_choi(task, d, u0);
      out.complement.dim = d;
      return out;
    }
    case Subgroup::so: {
      auto [sub, complement] = subalgebra_bases(d, SubalgebraKind::so);
      return choi_subgroup(analytic_derivative(task, u0), sub, complement);
    }
    case Subgroup::diag: {
      auto [sub, complement] = subalgebra_bases(d, SubalgebraKind::diag);
      return choi_subgroup(analytic_derivative(task, u0), sub, complement);
    }
    case Subgroup::tensor: {
      TensorEmbedding emb = tensor_embedding(d, task.tensor_copies);
      const int big = emb.sub.dim;
      if (u0.rows() != big) {
        throw InvalidInput("task_subgroup_choi: tensor base point must act on the product space");
      }
      // The per-leg task acts leg by leg, so its derivative on the product
      // space restricted to single-leg generators is the big-space derivative.
      DerivativeMap g = analytic_derivative(TaskSpec{task.kind, task.iteration_n}, u0);
      return choi_subgroup(g, emb.sub, emb.complement);
    }
  }
  throw InvalidInput("task_subgroup_choi: unknown subgroup");
}

}  // namespace uqc
