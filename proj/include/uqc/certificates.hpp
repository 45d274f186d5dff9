/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef UQC_CERTIFICATES_HPP
#define UQC_CERTIFICATES_HPP

#include <optional>
#include <string>
#include <vector>

#include "uqc/derivative.hpp"
#include "uqc/task.hpp"
#include "uqc/types.hpp"

namespace uqc {

// Closed-form primal point and dual witness for a registry task, checked
// against each other rather than against the numeric solver.
struct Certificate {
  std::string task;
  int d = 0;
  double claimed_value = 0.0;
  Matrix primal_beta;
  std::vector<Matrix> primal_complement;  // B'_k, subgroup tasks only
  Matrix dual_witness;                    // Gamma
  double primal_min_eigenvalue = 0.0;     // of J~ + beta (x) I
  double dual_psd_min_eigenvalue = 0.0;
  double dual_marginal_defect = 0.0;      // ||tr_2 Gamma - I||_F
  double dual_orthogonality_defect = 0.0; // max_k ||tr_1[(B_k^* (x) I) Gamma]||_F
  double primal_value = 0.0;
  double dual_value = 0.0;
  bool primal_feasible = false;
  bool dual_feasible = false;
  bool values_match = false;
};

// Instantiates the analytic certificate for one of: inversion, transposition,
// conjugation, iteration:n, so_inversion, diag_inversion.  u0 defaults to the
// identity; only conjugation and iteration depend on it.
Certificate verify_certificate(const TaskSpec& task, int d,
                               const std::optional<Matrix>& u0 = std::nullopt);

// Closed-form SDP optimum for a registry task (d^2-1, d+1, d-1, n, d-1, d-1).
double closed_form_value(const TaskSpec& task, int d);

}  // namespace uqc

#endif
