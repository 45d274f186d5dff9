/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef UQC_REPORT_IO_HPP
#define UQC_REPORT_IO_HPP

#include <json.hpp>
#include <string>

#include "uqc/registry.hpp"

namespace uqc {

// All numeric output is rounded to 9 significant digits so identical
// invocations serialize byte-identically.
double sig9(double x);
std::string format_double(double x);

nlohmann::ordered_json matrix_json(const Matrix& m);
nlohmann::ordered_json sdp_solution_json(const SdpSolution& solution);
nlohmann::ordered_json certificate_json(const Certificate& cert);
nlohmann::ordered_json catalysis_json(const CatalysisVerdict& verdict);
nlohmann::ordered_json bound_report_json(const BoundReport& report);
nlohmann::ordered_json prob_curve_json(const std::string& task, int d,
                                       const std::vector<ProbCurvePoint>& points);

std::string bound_report_text(const BoundReport& report);
std::string bound_report_csv_header();
std::string bound_report_csv_row(const BoundReport& report);
std::string certificate_text(const Certificate& cert);
std::string catalysis_text(const CatalysisVerdict& verdict);
std::string prob_curve_csv(const std::string& task, int d,
                           const std::vector<ProbCurvePoint>& points);
std::string prob_curve_text(const std::string& task, int d,
                            const std::vector<ProbCurvePoint>& points);

}  // namespace uqc

#endif
