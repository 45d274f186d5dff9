/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "uqc/registry.hpp"

#include <cmath>
#include <sstream>

namespace uqc {

RegistryRow registry_lookup(const TaskSpec& task, int d) {
  if (d < 2) throw InvalidInput("registry_lookup: dimension must be at least 2");
  RegistryRow row;
  row.sdp_closed_form = closed_form_value(task, d);

  if (task.subgroup != Subgroup::full) {
    // Subgroup rows carry the closed form only; no refinement or protocol
    // constants are tabulated for them.
    return row;
  }

  switch (task.kind) {
    case TaskKind::inversion:
      row.refined = static_cast<double>(d) * d;
      if (d == 2) {
        row.best_known.value = 4;
        row.best_known.numerical_prior = true;
      } else {
        row.best_known.asymptotic_quadratic = true;
      }
      break;
    case TaskKind::transposition:
      if (d == 2) {
        row.refined = 4.0;
        row.best_known.value = 4;
        row.best_known.numerical_prior = true;
      } else {
        row.refined = static_cast<double>(d + 3);
        row.refined_intermediate = d + 3.0 - d / (2.0 * (d - 1.0));
        row.best_known.asymptotic_quadratic = true;
      }
      break;
    case TaskKind::conjugation:
      row.refined = static_cast<double>(d - 1);
      row.best_known.value = d - 1;
      break;
    case TaskKind::iteration:
      // Tight by construction: n sequential applications realize the map.
      row.refined = static_cast<double>(task.iteration_n);
      row.best_known.value = task.iteration_n;
      break;
  }
  return row;
}

namespace {

void common_checks(BoundReport& report) {
  auto flag = [&report](const std::string& message) {
    report.consistent = false;
    report.violations.push_back(message);
  };
  if (report.sdp.status != SolveStatus::optimal) {
    flag(std::string("solver status ") + to_string(report.sdp.status));
  }
  if (report.sdp.gap > 1e-6 || report.sdp.gap < -1e-9) {
    std::ostringstream msg;
    msg << "duality gap " << report.sdp.gap << " outside [-1e-9, 1e-6]";
    flag(msg.str());
  }
}

}  // namespace

BoundReport assemble_report(const TaskSpec& task, int d, const SdpSolution& solution,
                            const std::string& u0_source, bool integer_rounding) {
  BoundReport report;
  report.task = task;
  report.d = d;
  report.u0_source = u0_source;
  report.sdp = solution;
  report.numeric_sdp_value = solution.primal_value;
  if (integer_rounding) report.rounded_lower_bound = round_up_queries(solution.primal_value);

  const RegistryRow row = registry_lookup(task, d);
  report.closed_form_value = row.sdp_closed_form;
  report.refined_bound = row.refined;
  report.refined_intermediate = row.refined_intermediate;
  report.best_known = row.best_known;

  auto flag = [&report](const std::string& message) {
    report.consistent = false;
    report.violations.push_back(message);
  };

  if (report.closed_form_value &&
      std::abs(report.numeric_sdp_value - *report.closed_form_value) > 1e-5) {
    std::ostringstream msg;
    msg << "numeric value " << report.numeric_sdp_value << " deviates from closed form "
        << *report.closed_form_value;
    flag(msg.str());
  }
  if (report.refined_bound && report.closed_form_value &&
      *report.refined_bound < *report.closed_form_value - 1e-12) {
    flag("refined bound below the closed-form optimum");
  }
  if (report.best_known.value && report.refined_bound &&
      *report.best_known.value < *report.refined_bound - 1e-12) {
    flag("best known achievable count contradicts the refined lower bound");
  }
  common_checks(report);
  return report;
}

BoundReport assemble_expr_report(const std::string& expr_text, int d,
                                 const SdpSolution& solution, const std::string& u0_source,
                                 bool integer_rounding) {
  BoundReport report;
  report.f_expr = expr_text;
  report.d = d;
  report.u0_source = u0_source;
  report.sdp = solution;
  report.numeric_sdp_value = solution.primal_value;
  if (integer_rounding) report.rounded_lower_bound = round_up_queries(solution.primal_value);
  common_checks(report);
  return report;
}

}  // namespace uqc
