/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef UQC_SDP_HPP
#define UQC_SDP_HPP

#include <optional>
#include <vector>

#include "uqc/bases.hpp"
#include "uqc/derivative.hpp"
#include "uqc/task.hpp"
#include "uqc/types.hpp"

namespace uqc {

enum class SolveStatus { optimal, infeasible, max_iter };

const char* to_string(SolveStatus status);

struct SolverOptions {
  // Barrier gap at exit.  Pushing far below 1e-7 is counterproductive in
  // double precision: the centering gradient t*c - grad(logdet) cancels
  // catastrophically once t exceeds ~nu/1e-7.
  double gap_tol = 1e-7;
  double center_tol = 1e-13;  // Newton decrement^2 / 2 declaring centrality
  double mu = 10.0;           // barrier parameter growth factor
  double t0 = 1.0;
  int max_newton = 500;
  // Feasibility probes only need the sign of the optimum: stop once the
  // objective at a feasible point drops below the first value, or its
  // certified lower bound rises above the second.
  std::optional<double> stop_when_value_below;
  std::optional<double> stop_when_lower_bound_above;
};

// Linear matrix-inequality program
//   minimize cost . x   s.t.   f0[b] + sum_i x[i] fi[b][i]  >= 0  per block b,
// solved by a log-det barrier path-following method on the real-symmetric
// embedding of each complex Hermitian block.
struct ConeBlock {
  Matrix f0;
  std::vector<Matrix> fi;  // one Hermitian coefficient per variable
};

struct ConeProblem {
  RealVector cost;
  std::vector<ConeBlock> blocks;
  RealVector start;  // strictly feasible
};

struct ConeSolution {
  RealVector x;
  double value = 0.0;
  double barrier_gap = 0.0;  // sum_b <dual_b, slack_b>, certified at centrality
  SolveStatus status = SolveStatus::optimal;
  int newton_steps = 0;
  std::vector<Matrix> slack;  // S_b(x)
  // Normalized so that sum_b <dual_b, fi_b> = cost_i at centrality; for the
  // bound SDPs this is the dual-feasible certificate matrix.
  std::vector<Matrix> dual;
};

ConeSolution solve_cone(const ConeProblem& problem, const SolverOptions& options = {});

// Solution of a bound SDP together with the certificate recovered from the
// opposite side of the duality pairing.
struct SdpSolution {
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;  // primal_value - dual_value, >= 0 up to roundoff
  Matrix beta;       // d x d Hermitian
  std::vector<Matrix> free_complement;  // B'_k, subgroup problems only
  Matrix gamma;      // d^2 x d^2, PSD with unit partial trace on slot 2
  SolveStatus status = SolveStatus::optimal;
  int newton_steps = 0;
};

// min tr(beta) s.t. J + beta (x) I >= 0.  The dual certificate gamma is
// recovered from the barrier and corrected to satisfy its marginal constraint.
SdpSolution solve_primal(const ChoiOperator& j, const SolverOptions& options = {});

// Independent solve of  max -tr(J Gamma)  s.t. Gamma >= 0, tr_2 Gamma = I,
// over an explicit parametrization of the constraint subspace; beta is
// recovered from the barrier as a primal-feasible certificate.
SdpSolution solve_dual(const ChoiOperator& j, const SolverOptions& options = {});

// Subgroup variant: min tr(beta) over beta and traceless B'_k with
// J_fixed + sum_k B_k^* (x) B'_k + beta (x) I >= 0.
SdpSolution solve_subgroup(const ChoiOperator& j_fixed, const OperatorBasis& complement,
                           const SolverOptions& options = {});

// Subgroup dual: adds the constraints tr_1[(B_k^* (x) I) Gamma] = 0.
SdpSolution solve_dual_subgroup(const ChoiOperator& j_fixed, const OperatorBasis& complement,
                                const SolverOptions& options = {});

struct RefinedBound {
  double value = 0.0;                  // analytic constant, not an SDP output
  std::optional<double> intermediate;  // sharper real bound behind the integer one
};

// Task-specific analytic improvements over the SDP optimum; absent for tasks
// without one.
std::optional<RefinedBound> refined_bound(TaskKind task, int d);

// ceil with a small guard so values a hair below an integer do not round up.
long round_up_queries(double value);

}  // namespace uqc

#endif
