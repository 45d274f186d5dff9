/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef UQC_CATALYSIS_HPP
#define UQC_CATALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "uqc/derivative.hpp"
#include "uqc/sdp.hpp"
#include "uqc/task.hpp"
#include "uqc/types.hpp"

namespace uqc {

struct ScalingCheck {
  int n = 0;
  double measured_ratio = 0.0;  // bound(U -> f(U)^n) / bound(f)
};

struct CatalysisVerdict {
  std::string task;
  int d = 0;
  double sdp_value = 0.0;
  std::optional<int> known_achievable_n;
  std::vector<ScalingCheck> scaling;
  double base_point_defect = 0.0;  // ||f(U0) - I||_F
  bool ruled_out = false;          // otherwise inconclusive
  SolveStatus status = SolveStatus::optimal;
};

inline const char* verdict_name(bool ruled_out) {
  return ruled_out ? "catalysis_ruled_out" : "inconclusive";
}

// Choi operator of the derivative of U -> f(U)^n at a base point with
// f(U0) = I.  Computed as n J_f and cross-checked against the product-rule
// derivative of the explicit n-fold product expression.
ChoiOperator power_map_choi(const FuncExprPtr& f, const Matrix& u0, int n);
ChoiOperator power_map_choi(const TaskSpec& task, const Matrix& u0, int n);

// A repeated-output protocol with an intact catalyst would beat the n-fold
// bound scaling; when the single-shot bound is tight against a known
// achievable count, that possibility is excluded.
CatalysisVerdict catalysis_verdict(const TaskSpec& task, int d,
                                   std::optional<int> known_achievable = std::nullopt,
                                   const SolverOptions& options = {});

// Known achievable query counts usable as tightness references.
std::optional<int> default_achievable(const TaskSpec& task, int d);

}  // namespace uqc

#endif
