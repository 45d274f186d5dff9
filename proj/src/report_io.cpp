/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "uqc/report_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace uqc {

using nlohmann::ordered_json;

double sig9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return std::strtod(buf, nullptr);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

ordered_json matrix_json(const Matrix& m) {
  ordered_json doc;
  doc["d"] = m.rows();
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({sig9(m(i, j).real()), sig9(m(i, j).imag())});
    }
    rows.push_back(std::move(row));
  }
  doc["entries"] = std::move(rows);
  return doc;
}

ordered_json sdp_solution_json(const SdpSolution& solution) {
  ordered_json doc;
  doc["primal_value"] = sig9(solution.primal_value);
  doc["dual_value"] = sig9(solution.dual_value);
  doc["gap"] = sig9(solution.gap);
  doc["beta"] = matrix_json(solution.beta);
  doc["gamma"] = matrix_json(solution.gamma);
  doc["status"] = to_string(solution.status);
  if (!solution.free_complement.empty()) {
    ordered_json list = ordered_json::array();
    for (const Matrix& b : solution.free_complement) list.push_back(matrix_json(b));
    doc["free_complement"] = std::move(list);
  }
  return doc;
}

ordered_json certificate_json(const Certificate& cert) {
  ordered_json doc;
  doc["schema"] = "uqc-certificate/1";
  doc["task"] = cert.task;
  doc["d"] = cert.d;
  doc["claimed_value"] = sig9(cert.claimed_value);
  doc["primal_value"] = sig9(cert.primal_value);
  doc["dual_value"] = sig9(cert.dual_value);
  doc["primal_feasible"] = cert.primal_feasible;
  doc["dual_feasible"] = cert.dual_feasible;
  doc["values_match"] = cert.values_match;
  doc["primal_min_eigenvalue"] = sig9(cert.primal_min_eigenvalue);
  doc["dual_psd_min_eigenvalue"] = sig9(cert.dual_psd_min_eigenvalue);
  doc["dual_marginal_defect"] = sig9(cert.dual_marginal_defect);
  doc["dual_orthogonality_defect"] = sig9(cert.dual_orthogonality_defect);
  doc["beta"] = matrix_json(cert.primal_beta);
  doc["dual_witness"] = matrix_json(cert.dual_witness);
  return doc;
}

ordered_json catalysis_json(const CatalysisVerdict& verdict) {
  ordered_json doc;
  doc["schema"] = "uqc-catalysis/1";
  doc["task"] = verdict.task;
  doc["d"] = verdict.d;
  doc["sdp_value"] = sig9(verdict.sdp_value);
  if (verdict.known_achievable_n) {
    doc["known_achievable_n"] = *verdict.known_achievable_n;
  } else {
    doc["known_achievable_n"] = nullptr;
  }
  ordered_json scaling = ordered_json::array();
  for (const ScalingCheck& check : verdict.scaling) {
    scaling.push_back({{"n", check.n}, {"measured_ratio", sig9(check.measured_ratio)}});
  }
  doc["scaling"] = std::move(scaling);
  doc["base_point_defect"] = sig9(verdict.base_point_defect);
  doc["verdict"] = verdict_name(verdict.ruled_out);
  doc["status"] = to_string(verdict.status);
  return doc;
}

namespace {

ordered_json achievable_json(const Achievable& known) {
  ordered_json doc;
  if (known.value) {
    doc["value"] = *known.value;
  } else {
    doc["value"] = nullptr;
  }
  doc["asymptotic_quadratic"] = known.asymptotic_quadratic;
  doc["numerical_prior"] = known.numerical_prior;
  return doc;
}

ordered_json task_json(const TaskSpec& task) {
  ordered_json doc;
  doc["name"] = task_name(task);
  doc["kind"] = to_string(task.kind);
  doc["iteration_n"] = task.iteration_n;
  doc["subgroup"] = to_string(task.subgroup);
  if (task.subgroup == Subgroup::tensor) {
    doc["tensor_copies"] = task.tensor_copies;
  }
  return doc;
}

ordered_json prob_point_json(const ProbCurvePoint& point) {
  ordered_json doc;
  doc["N"] = point.n_queries;
  doc["max_p_sdp"] = sig9(point.max_p_sdp);
  doc["closed_form"] = sig9(point.closed_form);
  doc["canonical"] = sig9(point.canonical);
  doc["trace_norm_path"] = sig9(point.trace_norm_path);
  if (!point.note.empty()) doc["note"] = point.note;
  return doc;
}

}  // namespace

ordered_json bound_report_json(const BoundReport& report) {
  ordered_json doc;
  doc["schema"] = "uqc-bounds-report/1";
  if (report.f_expr) {
    ordered_json task;
    task["name"] = "custom";
    task["f_expr"] = *report.f_expr;
    task["subgroup"] = to_string(report.task.subgroup);
    doc["task"] = std::move(task);
  } else {
    doc["task"] = task_json(report.task);
  }
  doc["d"] = report.d;
  doc["u0"] = report.u0_source;
  doc["sdp"] = sdp_solution_json(report.sdp);
  doc["numeric_sdp_value"] = sig9(report.numeric_sdp_value);
  doc["closed_form_value"] =
      report.closed_form_value ? ordered_json(sig9(*report.closed_form_value)) : nullptr;
  doc["refined_bound"] =
      report.refined_bound ? ordered_json(sig9(*report.refined_bound)) : nullptr;
  doc["refined_intermediate"] =
      report.refined_intermediate ? ordered_json(sig9(*report.refined_intermediate)) : nullptr;
  doc["best_known"] = achievable_json(report.best_known);
  doc["certificate"] =
      report.certificate ? certificate_json(*report.certificate) : ordered_json(nullptr);
  doc["catalysis"] =
      report.catalysis ? catalysis_json(*report.catalysis) : ordered_json(nullptr);
  if (!report.prob_slice.empty()) {
    ordered_json points = ordered_json::array();
    for (const ProbCurvePoint& point : report.prob_slice) points.push_back(prob_point_json(point));
    doc["prob_slice"] = std::move(points);
  }
  doc["rounded_lower_bound"] =
      report.rounded_lower_bound ? ordered_json(*report.rounded_lower_bound) : nullptr;
  doc["consistent"] = report.consistent;
  doc["violations"] = report.violations;
  return doc;
}

ordered_json prob_curve_json(const std::string& task, int d,
                             const std::vector<ProbCurvePoint>& points) {
  ordered_json doc;
  doc["schema"] = "uqc-prob-curve/1";
  doc["task"] = task;
  doc["d"] = d;
  ordered_json list = ordered_json::array();
  for (const ProbCurvePoint& point : points) list.push_back(prob_point_json(point));
  doc["points"] = std::move(list);
  return doc;
}

std::string bound_report_text(const BoundReport& report) {
  std::ostringstream out;
  out << "task: " << (report.f_expr ? ("custom \"" + *report.f_expr + "\"") : task_name(report.task))
      << "  d=" << report.d << "  U0=" << report.u0_source << "\n";
  out << "  SDP lower bound: " << format_double(report.numeric_sdp_value)
      << "  (dual " << format_double(report.sdp.dual_value) << ", gap "
      << format_double(report.sdp.gap) << ", " << to_string(report.sdp.status) << ")\n";
  if (report.closed_form_value) {
    out << "  closed form:     " << format_double(*report.closed_form_value) << "\n";
  }
  if (report.refined_bound) {
    out << "  refined bound:   " << format_double(*report.refined_bound)
        << "  (analytic, not an SDP output)";
    if (report.refined_intermediate) {
      out << "  [sharper real form " << format_double(*report.refined_intermediate) << "]";
    }
    out << "\n";
  }
  if (report.best_known.value) {
    out << "  best known:      " << *report.best_known.value
        << (report.best_known.numerical_prior ? "  (numerical, prior work)" : "") << "\n";
  } else if (report.best_known.asymptotic_quadratic) {
    out << "  best known:      ~(pi/2) d^2 asymptotically\n";
  }
  if (report.rounded_lower_bound) {
    out << "  integer queries: >= " << *report.rounded_lower_bound << "\n";
  }
  if (report.certificate) {
    out << "  certificate:     "
        << (report.certificate->values_match ? "values match" : "MISMATCH") << "\n";
  }
  if (report.catalysis) {
    out << "  catalysis:       " << verdict_name(report.catalysis->ruled_out) << "\n";
  }
  out << "  consistency:     " << (report.consistent ? "consistent" : "INCONSISTENT") << "\n";
  for (const std::string& violation : report.violations) {
    out << "    violation: " << violation << "\n";
  }
  return out.str();
}

std::string bound_report_csv_header() {
  return "task,d,numeric_sdp_value,closed_form,refined,best_known,dual_gap,status,consistent\n";
}

std::string bound_report_csv_row(const BoundReport& report) {
  std::ostringstream out;
  out << (report.f_expr ? "custom" : task_name(report.task)) << "," << report.d << ","
      << format_double(report.numeric_sdp_value) << ",";
  if (report.closed_form_value) out << format_double(*report.closed_form_value);
  out << ",";
  if (report.refined_bound) out << format_double(*report.refined_bound);
  out << ",";
  if (report.best_known.value) {
    out << *report.best_known.value;
  } else if (report.best_known.asymptotic_quadratic) {
    out << "~(pi/2)d^2";
  }
  out << "," << format_double(report.sdp.gap) << "," << to_string(report.sdp.status) << ","
      << (report.consistent ? "true" : "false") << "\n";
  return out.str();
}

std::string certificate_text(const Certificate& cert) {
  std::ostringstream out;
  out << "certificate " << cert.task << "  d=" << cert.d << "\n";
  out << "  claimed value:   " << format_double(cert.claimed_value) << "\n";
  out << "  primal tr(beta): " << format_double(cert.primal_value)
      << "  lambda_min " << format_double(cert.primal_min_eigenvalue)
      << (cert.primal_feasible ? "  feasible" : "  INFEASIBLE") << "\n";
  out << "  dual value:      " << format_double(cert.dual_value)
      << (cert.dual_feasible ? "  feasible" : "  INFEASIBLE") << "\n";
  out << "  values match:    " << (cert.values_match ? "yes" : "NO") << "\n";
  return out.str();
}

std::string catalysis_text(const CatalysisVerdict& verdict) {
  std::ostringstream out;
  out << "catalysis " << verdict.task << "  d=" << verdict.d << "\n";
  out << "  SDP value:       " << format_double(verdict.sdp_value) << "\n";
  if (verdict.known_achievable_n) {
    out << "  known achievable: " << *verdict.known_achievable_n << "\n";
  } else {
    out << "  known achievable: (none)\n";
  }
  for (const ScalingCheck& check : verdict.scaling) {
    out << "  scaling n=" << check.n << ": ratio " << format_double(check.measured_ratio) << "\n";
  }
  out << "  verdict:         " << verdict_name(verdict.ruled_out) << "\n";
  return out.str();
}

std::string prob_curve_csv(const std::string& task, int d,
                           const std::vector<ProbCurvePoint>& points) {
  std::ostringstream out;
  out << "task,d,N,max_p_sdp,closed_form,canonical,trace_norm_path\n";
  for (const ProbCurvePoint& point : points) {
    out << task << "," << d << "," << point.n_queries << ","
        << format_double(point.max_p_sdp) << "," << format_double(point.closed_form) << ","
        << format_double(point.canonical) << "," << format_double(point.trace_norm_path) << "\n";
  }
  return out.str();
}

std::string prob_curve_text(const std::string& task, int d,
                            const std::vector<ProbCurvePoint>& points) {
  std::ostringstream out;
  out << "success-probability ceilings for " << task << " at d=" << d << "\n";
  out << "   N   max_p_sdp     closed_form   canonical     trace_norm\n";
  for (const ProbCurvePoint& point : points) {
    char line[160];
    std::snprintf(line, sizeof(line), "  %2d   %-12.9g  %-12.9g  %-12.9g  %-12.9g",
                  point.n_queries, point.max_p_sdp, point.closed_form, point.canonical,
                  point.trace_norm_path);
    out << line;
    if (!point.note.empty()) out << "  [" << point.note << "]";
    out << "\n";
  }
  return out.str();
}

}  // namespace uqc
