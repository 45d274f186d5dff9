/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef UQC_REGISTRY_HPP
#define UQC_REGISTRY_HPP

#include <optional>
#include <string>
#include <vector>

#include "uqc/catalysis.hpp"
#include "uqc/certificates.hpp"
#include "uqc/prob.hpp"
#include "uqc/sdp.hpp"
#include "uqc/task.hpp"

namespace uqc {

// Best-known achievable query count: either a concrete integer or a
// symbolic growth-rate marker that never enters numeric comparisons.
struct Achievable {
  std::optional<int> value;
  bool asymptotic_quadratic = false;  // "~(pi/2) d^2"
  bool numerical_prior = false;       // established numerically in prior work
};

struct RegistryRow {
  double sdp_closed_form = 0.0;
  std::optional<double> refined;
  std::optional<double> refined_intermediate;
  Achievable best_known;
};

// Stored constants for a task at dimension d; throws for unknown tasks.
RegistryRow registry_lookup(const TaskSpec& task, int d);

struct ProbCurvePoint {
  int n_queries = 0;
  double max_p_sdp = 0.0;
  double closed_form = 0.0;
  double canonical = 0.0;
  double trace_norm_path = 0.0;
  std::string note;  // informational, e.g. a stronger no-go known from elsewhere
};

struct BoundReport {
  TaskSpec task;
  std::optional<std::string> f_expr;  // custom function, no registry row
  int d = 0;
  std::string u0_source = "identity";
  SdpSolution sdp;
  double numeric_sdp_value = 0.0;
  std::optional<double> closed_form_value;
  std::optional<double> refined_bound;
  std::optional<double> refined_intermediate;
  Achievable best_known;
  std::optional<Certificate> certificate;
  std::optional<CatalysisVerdict> catalysis;
  std::vector<ProbCurvePoint> prob_slice;
  std::optional<long> rounded_lower_bound;
  bool consistent = true;
  std::vector<std::string> violations;
};

// Cross-checks a finished solve against the stored constants; violations are
// recorded, not thrown.
BoundReport assemble_report(const TaskSpec& task, int d, const SdpSolution& solution,
                            const std::string& u0_source, bool integer_rounding = false);

// Report for a user-supplied expression: no registry constants to compare.
BoundReport assemble_expr_report(const std::string& expr_text, int d,
                                 const SdpSolution& solution, const std::string& u0_source,
                                 bool integer_rounding = false);

}  // namespace uqc

#endif
