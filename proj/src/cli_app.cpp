/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "uqc/cli_app.hpp"

#include <CLI11.hpp>
#include <clocale>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "uqc/catalysis.hpp"
#include "uqc/certificates.hpp"
#include "uqc/derivative.hpp"
#include "uqc/linalg.hpp"
#include "uqc/matrix_io.hpp"
#include "uqc/parallel.hpp"
#include "uqc/prob.hpp"
#include "uqc/registry.hpp"
#include "uqc/report_io.hpp"
#include "uqc/sdp.hpp"

namespace uqc::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitInconsistent = 4;

struct TaskArgs {
  std::string task;
  std::string f_expr;
  std::string subgroup = "full";
  std::string u0 = "identity";
  int d = 2;
  std::string d_range;
  std::string format = "text";
  bool round = false;
  bool with_catalysis = false;
  int n_max = 4;
  int prob_n_max = 0;
  std::optional<int> known_n;
  int seeds = 5;
  double eps = 1e-3;
};

struct ResolvedTask {
  bool is_expr = false;
  TaskSpec spec;
  std::string expr_text;
};

ResolvedTask resolve_task(const TaskArgs& args) {
  ResolvedTask resolved;
  if (!args.f_expr.empty()) {
    if (!args.task.empty()) throw InvalidInput("give either --task or --f-expr, not both");
    resolved.is_expr = true;
    resolved.expr_text = args.f_expr;
  } else {
    if (args.task.empty()) throw InvalidInput("missing --task (or --f-expr)");
    auto parsed = parse_task_name(args.task);
    if (!parsed) throw InvalidInput("unknown task '" + args.task + "'");
    resolved.spec = *parsed;
  }

  if (args.subgroup != "full") {
    if (!resolved.is_expr && resolved.spec.subgroup != Subgroup::full) {
      throw InvalidInput("task name already carries a subgroup; drop --subgroup");
    }
    if (args.subgroup == "so") {
      resolved.spec.subgroup = Subgroup::so;
    } else if (args.subgroup == "diag") {
      resolved.spec.subgroup = Subgroup::diag;
    } else if (args.subgroup.rfind("tensor:", 0) == 0) {
      const int copies = std::stoi(args.subgroup.substr(7));
      if (copies < 2) throw InvalidInput("tensor promise needs at least 2 copies");
      resolved.spec.subgroup = Subgroup::tensor;
      resolved.spec.tensor_copies = copies;
    } else {
      throw InvalidInput("unknown subgroup '" + args.subgroup + "'");
    }
  }
  return resolved;
}

int solve_dimension(const ResolvedTask& task, int d) {
  if (task.spec.subgroup != Subgroup::tensor) return d;
  double big = std::pow(static_cast<double>(d), task.spec.tensor_copies);
  if (big > 16.5) throw InvalidInput("tensor product dimension exceeds 16");
  return static_cast<int>(std::llround(big));
}

void check_dimension(const ResolvedTask& task, int d) {
  if (task.spec.subgroup == Subgroup::tensor) {
    solve_dimension(task, d);  // validates the cap
    return;
  }
  if (d < 2 || d > 8) throw InvalidInput("dimension must lie in [2, 8]");
}

Matrix resolve_u0(const std::string& source, int d, std::ostream& err) {
  if (source == "identity") return Matrix::Identity(d, d);
  if (source.rfind("haar:", 0) == 0) {
    const auto seed = static_cast<std::uint64_t>(std::stoull(source.substr(5)));
    return haar_unitary(d, seed);
  }
  Matrix u = load_matrix(source, MatrixFileCheck::unitary);
  if (u.rows() != d) {
    throw InvalidInput("U0 file dimension " + std::to_string(u.rows()) +
                       " does not match d=" + std::to_string(d));
  }
  const Complex det = u.determinant();
  if (std::abs(det - Complex(1.0, 0.0)) > 1e-12) {
    err << "note: U0 determinant phase " << std::arg(det)
        << " divided out to reach SU(d)\n";
    u *= std::exp(Complex(0.0, -std::arg(det) / d));
  }
  return u;
}

Matrix tensor_power(const Matrix& u, int copies) {
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < copies; ++i) out = kron(out, u);
  return out;
}

bool has_certificate(const TaskSpec& spec) {
  if (spec.subgroup == Subgroup::full) return true;
  return (spec.subgroup == Subgroup::so || spec.subgroup == Subgroup::diag) &&
         spec.kind == TaskKind::inversion;
}

BoundReport run_bound_single(const ResolvedTask& task, int d, const TaskArgs& args,
                             std::ostream& err) {
  const int dim = solve_dimension(task, d);
  Matrix u0 = resolve_u0(args.u0, d, err);
  if (task.spec.subgroup == Subgroup::tensor) u0 = tensor_power(u0, task.spec.tensor_copies);

  SdpSolution solution;
  BoundReport report;

  if (task.is_expr) {
    FuncExprPtr f = parse_func_expr(task.expr_text, dim);
    DerivativeMap g = dsl_derivative(f, u0);
    if (task.spec.subgroup == Subgroup::full) {
      solution = solve_primal(choi(g, gellmann_basis(dim)));
    } else if (task.spec.subgroup == Subgroup::tensor) {
      TensorEmbedding emb = tensor_embedding(d, task.spec.tensor_copies);
      SubgroupChoi sc = choi_subgroup(g, emb.sub, emb.complement);
      solution = solve_subgroup(sc.fixed, sc.complement);
    } else {
      auto [sub, complement] = subalgebra_bases(
          dim, task.spec.subgroup == Subgroup::so ? SubalgebraKind::so : SubalgebraKind::diag);
      SubgroupChoi sc = choi_subgroup(g, sub, complement);
      solution = solve_subgroup(sc.fixed, sc.complement);
    }
    report = assemble_expr_report(task.expr_text, dim, solution, args.u0, args.round);
    report.task.subgroup = task.spec.subgroup;
    return report;
  }

  if (task.spec.subgroup == Subgroup::full) {
    solution = solve_primal(task_choi(task.spec, dim, u0));
  } else {
    SubgroupChoi sc = task_subgroup_choi(task.spec, d, u0);
    solution = solve_subgroup(sc.fixed, sc.complement);
  }
  report = assemble_report(task.spec, d, solution, args.u0, args.round);

  if (has_certificate(task.spec)) {
    report.certificate = verify_certificate(task.spec, d, u0);
    if (!report.certificate->values_match) {
      report.consistent = false;
      report.violations.push_back("analytic certificate values do not match");
    }
  }
  if (args.with_catalysis && task.spec.subgroup == Subgroup::full) {
    report.catalysis = catalysis_verdict(task.spec, d, args.known_n);
  }
  if (args.prob_n_max > 0 && task.spec.subgroup == Subgroup::full &&
      task.spec.kind != TaskKind::iteration) {
    const ChoiOperator j = task_choi(task.spec, d, u0);
    for (int n = 1; n <= args.prob_n_max; ++n) {
      ProbCurvePoint point;
      point.n_queries = n;
      point.max_p_sdp = max_success_probability(j, n).max_p;
      point.trace_norm_path = min_trace_norm_path(j, n).max_p;
      point.closed_form = closed_form_curve(task.spec.kind, d, n);
      point.canonical = canonical_bound(j, n);
      report.prob_slice.push_back(point);
    }
  }
  return report;
}

std::pair<int, int> parse_d_range(const std::string& range) {
  const auto sep = range.find(':');
  if (sep == std::string::npos) throw InvalidInput("--d-range expects lo:hi");
  const int lo = std::stoi(range.substr(0, sep));
  const int hi = std::stoi(range.substr(sep + 1));
  if (lo > hi) throw InvalidInput("--d-range expects lo <= hi");
  return {lo, hi};
}

int report_exit_code(const BoundReport& report) {
  if (report.sdp.status != SolveStatus::optimal) return kExitSolver;
  if (!report.consistent) return kExitInconsistent;
  return kExitOk;
}

int run_bound(const TaskArgs& args, std::ostream& out, std::ostream& err) {
  const ResolvedTask task = resolve_task(args);

  std::vector<int> dims;
  if (!args.d_range.empty()) {
    auto [lo, hi] = parse_d_range(args.d_range);
    for (int d = lo; d <= hi; ++d) dims.push_back(d);
  } else {
    dims.push_back(args.d);
  }
  for (int d : dims) check_dimension(task, d);

  std::vector<BoundReport> reports(dims.size());
  std::vector<std::string> notes(dims.size());
  std::exception_ptr failure;
  parallel_for_index(static_cast<int>(dims.size()), [&](int i) {
    try {
      std::ostringstream local_err;
      reports[i] = run_bound_single(task, dims[i], args, local_err);
      notes[i] = local_err.str();
    } catch (...) {
      if (!failure) failure = std::current_exception();
    }
  });
  if (failure) std::rethrow_exception(failure);
  for (const std::string& note : notes) err << note;

  if (args.format == "json") {
    if (dims.size() == 1) {
      out << bound_report_json(reports[0]).dump(2) << "\n";
    } else {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const BoundReport& r : reports) arr.push_back(bound_report_json(r));
      out << arr.dump(2) << "\n";
    }
  } else if (args.format == "text") {
    for (const BoundReport& r : reports) out << bound_report_text(r);
  } else if (args.format == "csv") {
    out << bound_report_csv_header();
    for (const BoundReport& r : reports) out << bound_report_csv_row(r);
  } else {
    throw InvalidInput("bound supports --format text|json|csv");
  }

  int exit_code = kExitOk;
  for (const BoundReport& r : reports) exit_code = std::max(exit_code, report_exit_code(r));
  return exit_code;
}

int run_prob_curve(const TaskArgs& args, std::ostream& out, std::ostream& err) {
  const ResolvedTask task = resolve_task(args);
  if (task.is_expr || task.spec.subgroup != Subgroup::full ||
      task.spec.kind == TaskKind::iteration) {
    throw InvalidInput("prob-curve supports the inversion, transposition and conjugation tasks");
  }
  if (args.d < 2 || args.d > 8) throw InvalidInput("dimension must lie in [2, 8]");
  if (args.n_max < 1) throw InvalidInput("--n-max must be positive");

  const int d = args.d;
  const Matrix u0 = resolve_u0(args.u0, d, err);
  const ChoiOperator j = task_choi(task.spec, d, u0);

  std::vector<ProbCurvePoint> points(args.n_max);
  std::exception_ptr failure;
  bool converged = true;
  parallel_for_index(args.n_max, [&](int i) {
    try {
      const int n = i + 1;
      ProbCurvePoint point;
      point.n_queries = n;
      const ProbSolution bisect = max_success_probability(j, n);
      const ProbSolution tracenorm = min_trace_norm_path(j, n);
      point.max_p_sdp = bisect.max_p;
      point.trace_norm_path = tracenorm.max_p;
      point.closed_form = closed_form_curve(task.spec.kind, d, n);
      point.canonical = canonical_bound(j, n);
      if (task.spec.kind == TaskKind::conjugation && n < d - 1) {
        // known from a separate argument, not recomputed here
        point.note = "prior no-go: exact conjugation has p = 0 below d-1 queries";
      }
      if (bisect.status != SolveStatus::optimal || tracenorm.status != SolveStatus::optimal) {
        converged = false;
      }
      points[i] = point;
    } catch (...) {
      if (!failure) failure = std::current_exception();
    }
  });
  if (failure) std::rethrow_exception(failure);

  const std::string name = task_name(task.spec);
  if (args.format == "csv") {
    out << prob_curve_csv(name, d, points);
  } else if (args.format == "json") {
    out << prob_curve_json(name, d, points).dump(2) << "\n";
  } else if (args.format == "text") {
    out << prob_curve_text(name, d, points);
  } else {
    throw InvalidInput("prob-curve supports --format text|json|csv");
  }
  return converged ? kExitOk : kExitSolver;
}

int run_certify(const TaskArgs& args, std::ostream& out, std::ostream& err) {
  const ResolvedTask task = resolve_task(args);
  if (task.is_expr) throw InvalidInput("certify needs a registry task, not --f-expr");
  if (!has_certificate(task.spec)) {
    throw InvalidInput("no closed-form certificate for task '" + task_name(task.spec) + "'");
  }
  check_dimension(task, args.d);
  const Matrix u0 = resolve_u0(args.u0, args.d, err);
  const Certificate cert = verify_certificate(task.spec, args.d, u0);

  if (args.format == "json") {
    out << certificate_json(cert).dump(2) << "\n";
  } else if (args.format == "text") {
    out << certificate_text(cert);
  } else {
    throw InvalidInput("certify supports --format text|json");
  }
  return cert.values_match ? kExitOk : kExitInconsistent;
}

int run_catalysis(const TaskArgs& args, std::ostream& out, std::ostream& err) {
  (void)err;
  const ResolvedTask task = resolve_task(args);
  if (task.is_expr) throw InvalidInput("catalysis needs a built-in task");
  if (task.spec.subgroup != Subgroup::full) {
    throw InvalidInput("catalysis verdicts are defined for unrestricted tasks");
  }
  check_dimension(task, args.d);
  const CatalysisVerdict verdict = catalysis_verdict(task.spec, args.d, args.known_n);

  if (args.format == "json") {
    out << catalysis_json(verdict).dump(2) << "\n";
  } else if (args.format == "text") {
    out << catalysis_text(verdict);
  } else {
    throw InvalidInput("catalysis supports --format text|json");
  }
  return verdict.status == SolveStatus::optimal ? kExitOk : kExitSolver;
}

int run_derivative_check(const TaskArgs& args, std::ostream& out, std::ostream& err) {
  (void)err;
  const ResolvedTask task = resolve_task(args);
  if (task.spec.subgroup != Subgroup::full) {
    throw InvalidInput("derivative-check runs on the unrestricted space");
  }
  if (args.d < 2 || args.d > 8) throw InvalidInput("dimension must lie in [2, 8]");
  if (args.seeds < 1) throw InvalidInput("--seeds must be positive");
  if (!(args.eps >= 1e-6 && args.eps <= 1e-2)) {
    throw InvalidInput("--eps must lie in [1e-6, 1e-2]");
  }

  const int d = args.d;
  const OperatorBasis basis = gellmann_basis(d);
  FuncExprPtr f = task.is_expr ? parse_func_expr(task.expr_text, d)
                               : task_expr(task.spec, d);

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  double worst_default = 0.0;
  std::ostringstream table;
  table << "seed   err(eps)      err(eps/2)    ratio         err(default)\n";
  for (int s = 1; s <= args.seeds; ++s) {
    const Matrix u0 = haar_unitary(d, static_cast<std::uint64_t>(s));
    const Matrix reference = choi(dsl_derivative(f, u0), basis).mat;
    const Matrix coarse =
        choi(finite_difference_derivative(f, u0, args.eps, false), basis).mat;
    const Matrix fine =
        choi(finite_difference_derivative(f, u0, args.eps / 2.0, false), basis).mat;
    const Matrix preferred = choi(finite_difference_derivative(f, u0), basis).mat;

    const double err_coarse = (coarse - reference).norm();
    const double err_fine = (fine - reference).norm();
    const double err_default = (preferred - reference).norm();
    worst_default = std::max(worst_default, err_default);
    const bool measurable = err_fine > 1e-11;
    const double ratio = measurable ? err_coarse / err_fine : 0.0;

    nlohmann::ordered_json row;
    row["seed"] = s;
    row["err_eps"] = sig9(err_coarse);
    row["err_half_eps"] = sig9(err_fine);
    row["order_ratio"] = measurable ? nlohmann::ordered_json(sig9(ratio)) : nullptr;
    row["err_default"] = sig9(err_default);
    rows.push_back(std::move(row));

    char line[160];
    std::snprintf(line, sizeof(line), "%4d   %-12.5g  %-12.5g  %-12.5g  %-12.5g\n", s,
                  err_coarse, err_fine, measurable ? ratio : 0.0, err_default);
    table << line;
  }

  const bool pass = worst_default <= 1e-6;
  if (args.format == "json") {
    nlohmann::ordered_json doc;
    doc["schema"] = "uqc-derivative-check/1";
    doc["task"] = task.is_expr ? task.expr_text : task_name(task.spec);
    doc["d"] = d;
    doc["eps"] = sig9(args.eps);
    doc["rows"] = std::move(rows);
    doc["max_default_error"] = sig9(worst_default);
    doc["pass"] = pass;
    out << doc.dump(2) << "\n";
  } else if (args.format == "text") {
    out << "finite-difference check for "
        << (task.is_expr ? task.expr_text : task_name(task.spec)) << " at d=" << d << "\n"
        << table.str() << "max default-scheme error: " << format_double(worst_default)
        << (pass ? "  (pass)" : "  (FAIL)") << "\n";
  } else {
    throw InvalidInput("derivative-check supports --format text|json");
  }
  return pass ? kExitOk : kExitInconsistent;
}

void add_common_options(CLI::App* sub, TaskArgs& args, bool with_u0 = true) {
  sub->add_option("--task", args.task, "built-in task name, e.g. inversion or iteration:3");
  sub->add_option("--f-expr", args.f_expr, "custom function expression");
  sub->add_option("--d", args.d, "local dimension");
  sub->add_option("--format", args.format, "output format");
  if (with_u0) {
    sub->add_option("--u0", args.u0, "base point: identity, haar:<seed>, or a matrix file");
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  // CSV and text output use '.' as the decimal separator regardless of the
  // caller's environment.
  std::setlocale(LC_NUMERIC, "C");

  CLI::App app{"certified lower bounds on the query complexity of unitary transformations"};
  app.require_subcommand(1);

  TaskArgs args;

  CLI::App* bound = app.add_subcommand("bound", "solve the bound SDP for a task");
  add_common_options(bound, args);
  bound->add_option("--d-range", args.d_range, "sweep dimensions lo:hi");
  bound->add_option("--subgroup", args.subgroup, "full, so, diag, or tensor:<n>");
  bound->add_flag("--round", args.round, "also report the integer query bound");
  bound->add_flag("--with-catalysis", args.with_catalysis, "attach a catalysis verdict");
  bound->add_option("--known-n", args.known_n, "achievable query count for catalysis");
  bound->add_option("--prob-n-max", args.prob_n_max,
                    "attach success-probability ceilings for N = 1..k");

  CLI::App* prob = app.add_subcommand("prob-curve", "success-probability ceilings over N");
  add_common_options(prob, args);
  prob->add_option("--n-max", args.n_max, "largest query count");

  CLI::App* certify = app.add_subcommand("certify", "check the closed-form certificate");
  add_common_options(certify, args);

  CLI::App* catalysis = app.add_subcommand("catalysis", "tightness-based catalysis verdict");
  add_common_options(catalysis, args, false);
  catalysis->add_option("--known-n", args.known_n, "achievable query count to test against");

  CLI::App* derivative = app.add_subcommand("derivative-check",
                                            "finite differences against the analytic rules");
  add_common_options(derivative, args, false);
  derivative->add_option("--seeds", args.seeds, "number of Haar base points");
  derivative->add_option("--eps", args.eps, "step for the order check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (bound->parsed()) return run_bound(args, out, err);
    if (prob->parsed()) return run_prob_curve(args, out, err);
    if (certify->parsed()) return run_certify(args, out, err);
    if (catalysis->parsed()) return run_catalysis(args, out, err);
    if (derivative->parsed()) return run_derivative_check(args, out, err);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace uqc::cli
