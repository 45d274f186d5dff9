/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef UQC_DERIVATIVE_HPP
#define UQC_DERIVATIVE_HPP

#include <functional>
#include <string>

#include "uqc/bases.hpp"
#include "uqc/func_expr.hpp"
#include "uqc/task.hpp"
#include "uqc/types.hpp"

namespace uqc {

// First-order response of a map f: SU(d) -> SU(d) around a base point U0;
// the linear map sending a traceless Hermitian generator H of the input
// perturbation e^{i eps H} U0 to the generator of the output perturbation
// f(U0) e^{i eps g(H)}.
//
// Primitive maps (left-perturbed input, right-read output):
//   id          g(H) = U0^dagger H U0
//   inverse     g(H) = -H
//   transpose   g(H) = H^T
//   conjugate   g(H) = -U0^T H^* U0^*
//   power k>0   g(H) = sum_{j=1..k} U0^{-j} H U0^{j}
//   power k<0   g(H) = -sum_{j=0..|k|-1} U0^{j} H U0^{-j}
//   lmul V      g(H) = U0^dagger H U0
//   rmul V      g(H) = (U0 V)^dagger H (U0 V)
//   sandwich V  g(H) = V U0^dagger H U0 V^dagger
// Combinators:
//   compose(f2, f1):  g(H) = g_{f2, V0}( V0 g_{f1, U0}(H) V0^dagger ),
//                     with V0 = f1(U0) carrying the output perturbation of f1
//                     back to a left perturbation of f2's input
//   product(f1, f2):  g(H) = f2(U0)^dagger g_{f1, U0}(H) f2(U0) + g_{f2, U0}(H)
struct DerivativeMap {
  int dim = 0;
  Matrix base_point;  // U0
  std::function<Matrix(const Matrix&)> apply;
  std::string provenance;  // "analytic", "chain_rule", "finite_difference(...)"
};

DerivativeMap analytic_derivative(const TaskSpec& task, const Matrix& u0);

// Chain/product-rule derivative of an expression tree.
DerivativeMap dsl_derivative(const FuncExprPtr& f, const Matrix& u0);

// Central finite difference of the defining limit:
//   g(H) = (K(+eps) - K(-eps)) / (2 eps),
//   K(s) = log_unitary( f(U0)^{-1} f(e^{i s H} U0) ),
// projected onto the traceless Hermitian part.  Second-order accurate;
// `richardson` adds one (eps, eps/2) extrapolation step.
DerivativeMap finite_difference_derivative(const FuncExprPtr& f, const Matrix& u0,
                                           double eps = 1e-4, bool richardson = true);
DerivativeMap finite_difference_derivative(const TaskSpec& task, const Matrix& u0,
                                           double eps = 1e-4, bool richardson = true);

// Hermitian operator on a labeled bipartite space of local dimension d:
// slot 1 carries the conjugated input-basis leg, slot 2 the output leg.
struct ChoiOperator {
  int local_dim = 0;
  Matrix mat;  // d^2 x d^2
  std::string source;
};

// J = sum_j G_j^* (x) g(G_j) over a full orthonormal traceless Hermitian
// basis; independent of which such basis is used.
ChoiOperator choi(const DerivativeMap& g, const OperatorBasis& basis);

struct SubgroupChoi {
  ChoiOperator fixed;        // sum over the subalgebra generators only
  OperatorBasis complement;  // directions left free by the subgroup promise
};

// Restriction of the Choi assembly to a subalgebra: the complement directions
// become free variables downstream.
SubgroupChoi choi_subgroup(const DerivativeMap& g, const OperatorBasis& sub,
                           const OperatorBasis& complement);

// Analytic Choi operator of a built-in task at u0, over the Gell-Mann basis
// of the task's natural space (d^copies for tensor subgroup promises).
ChoiOperator task_choi(const TaskSpec& task, int d, const Matrix& u0);

// Fixed part plus complement for a task restricted to a subgroup promise.
SubgroupChoi task_subgroup_choi(const TaskSpec& task, int d, const Matrix& u0);

}  // namespace uqc

#endif
