/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef UQC_PROB_HPP
#define UQC_PROB_HPP

#include <string>

#include "uqc/derivative.hpp"
#include "uqc/sdp.hpp"
#include "uqc/task.hpp"
#include "uqc/types.hpp"

namespace uqc {

// Success-probability ceiling at a fixed query budget N, together with the
// feasibility witnesses (J_A, J_B, beta) backing it:
//   J_A - J_B = J + beta (x) I,  tr beta = N,
//   tr J_B = r tr J_A with r = (1 - sqrt p) / (1 + sqrt p),  J_A, J_B >= 0.
struct ProbSolution {
  int d = 0;
  int n_queries = 0;
  double max_p = 0.0;
  Matrix j_a, j_b;
  Matrix beta;
  double a_value = 0.0;  // min_{tr beta = N} ||J + beta (x) I||_1 (trace-norm path)
  std::string method;    // "sdp_bisection" | "trace_norm" | "closed_form" | "canonical"
  SolveStatus status = SolveStatus::optimal;
};

// Largest p for which the feasibility system above is solvable, found by
// bisection on p; each probe is a semidefinite feasibility program.  Returns
// p = 1 outright when N covers the deterministic optimum.
ProbSolution max_success_probability(const ChoiOperator& j, int n_queries,
                                     const SolverOptions& options = {});

// Same ceiling through the trace-norm reduction: a = min ||J + beta (x) I||_1
// over tr beta = N, then r = max(0, (a - Nd)/(a + Nd)) and
// p = ((1 - r)/(1 + r))^2.
ProbSolution min_trace_norm_path(const ChoiOperator& j, int n_queries,
                                 const SolverOptions& options = {});

// Analytic ceilings for the three named tasks, clamped to [0, 1]; the
// conjugation formula is vacuous (1) when its denominator is nonpositive.
double closed_form_curve(TaskKind task, int d, int n_queries);

// min(1, (N d ||J||_op / ||J||_F^2)^2); rejects J = 0.
double canonical_bound(const ChoiOperator& j, int n_queries);

}  // namespace uqc

#endif
