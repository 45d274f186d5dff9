/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <vector>

#include "property_suites.hpp"
#include "uqc/catalysis.hpp"
#include "uqc/certificates.hpp"
#include "uqc/derivative.hpp"
#include "uqc/linalg.hpp"
#include "uqc/prob.hpp"
#include "uqc/registry.hpp"
#include "uqc/sdp.hpp"

using namespace uqc;

namespace {

int g_failures = 0;

void verdict(int index, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++g_failures;
}

struct Checker {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail << (detail.str().empty() ? "" : "; ") << what;
    }
  }
};

double solve_value(const TaskSpec& task, int d, double* gap) {
  const Matrix u0 = Matrix::Identity(d, d);
  SdpSolution sol;
  if (task.subgroup == Subgroup::full) {
    sol = solve_primal(task_choi(task, d, u0));
  } else if (task.subgroup == Subgroup::tensor) {
    Matrix big = Matrix::Identity(1, 1);
    for (int c = 0; c < task.tensor_copies; ++c) big = kron(big, u0);
    SubgroupChoi sc = task_subgroup_choi(task, d, big);
    sol = solve_subgroup(sc.fixed, sc.complement);
  } else {
    SubgroupChoi sc = task_subgroup_choi(task, d, u0);
    sol = solve_subgroup(sc.fixed, sc.complement);
  }
  if (gap) *gap = sol.gap;
  return sol.primal_value;
}

void criterion_1_deterministic_oracles() {
  Checker check;
  const auto started = std::chrono::steady_clock::now();

  auto run = [&](const TaskSpec& task, int d, double expected) {
    double gap = 0.0;
    const double value = solve_value(task, d, &gap);
    std::ostringstream label;
    label << task_name(task) << " d=" << d;
    check.require(std::abs(value - expected) <= 1e-5,
                  label.str() + " value " + std::to_string(value));
    check.require(gap >= -1e-9 && gap <= 1e-6, label.str() + " gap " + std::to_string(gap));
  };

  for (int d = 2; d <= 5; ++d) {
    run(TaskSpec{TaskKind::inversion}, d, d * d - 1.0);
    run(TaskSpec{TaskKind::transposition}, d, d + 1.0);
    run(TaskSpec{TaskKind::conjugation}, d, d - 1.0);
  }
  for (int n = 1; n <= 5; ++n) {
    run(TaskSpec{TaskKind::iteration, n}, 2, n);
    run(TaskSpec{TaskKind::iteration, n}, 3, n);
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  check.require(seconds <= 60.0, "wall time " + std::to_string(seconds) + "s");
  std::ostringstream detail;
  detail << "22 instances in " << std::fixed << seconds << "s";
  verdict(1, "deterministic SDP oracle suite", check.ok,
          check.ok ? detail.str() : check.detail.str());
}

void criterion_2_refined_registry() {
  Checker check;
  for (int d = 2; d <= 8; ++d) {
    auto inv = refined_bound(TaskKind::inversion, d);
    check.require(inv && inv->value == d * d, "inversion refined at d=" + std::to_string(d));
    auto trans = refined_bound(TaskKind::transposition, d);
    const double expected_trans = d == 2 ? 4.0 : d + 3.0;
    check.require(trans && trans->value == expected_trans,
                  "transposition refined at d=" + std::to_string(d));
    if (d >= 3) {
      check.require(trans->intermediate &&
                        std::abs(*trans->intermediate - (d + 3.0 - d / (2.0 * (d - 1.0)))) <= 1e-12,
                    "transposition sharper form at d=" + std::to_string(d));
    }
    auto conj = refined_bound(TaskKind::conjugation, d);
    check.require(conj && conj->value == d - 1.0, "conjugation refined at d=" + std::to_string(d));

    const std::vector<TaskSpec> rows = {
        TaskSpec{TaskKind::inversion}, TaskSpec{TaskKind::transposition},
        TaskSpec{TaskKind::conjugation}, TaskSpec{TaskKind::iteration, 1},
        TaskSpec{TaskKind::iteration, 7}, TaskSpec{TaskKind::inversion, 1, Subgroup::so},
        TaskSpec{TaskKind::inversion, 1, Subgroup::diag}};
    for (const TaskSpec& task : rows) {
      RegistryRow row = registry_lookup(task, d);
      if (row.refined) {
        check.require(*row.refined >= row.sdp_closed_form - 1e-12,
                      task_name(task) + ": refined below closed form");
      }
      if (row.best_known.value && row.refined) {
        check.require(*row.best_known.value >= *row.refined - 1e-12,
                      task_name(task) + ": achievable below refined bound");
      }
    }
  }
  verdict(2, "refined-bound registry", check.ok, check.detail.str());
}

void criterion_3_subgroup_suite() {
  Checker check;
  auto run = [&](const TaskSpec& task, int d, double expected) {
    double gap = 0.0;
    const double value = solve_value(task, d, &gap);
    std::ostringstream label;
    label << task_name(task) << " d=" << d;
    check.require(std::abs(value - expected) <= 1e-5,
                  label.str() + " value " + std::to_string(value));
    check.require(gap >= -1e-9 && gap <= 1e-6, label.str() + " gap " + std::to_string(gap));
  };

  for (int d : {2, 3, 4}) run(TaskSpec{TaskKind::inversion, 1, Subgroup::so}, d, d - 1.0);
  for (int d : {2, 3, 4, 5}) run(TaskSpec{TaskKind::inversion, 1, Subgroup::diag}, d, d - 1.0);

  run(TaskSpec{TaskKind::inversion, 1, Subgroup::tensor, 2}, 2, 3.0);
  const double single_copy = solve_value(TaskSpec{TaskKind::inversion}, 2, nullptr);
  const double tensor_value =
      solve_value(TaskSpec{TaskKind::inversion, 1, Subgroup::tensor, 2}, 2, nullptr);
  check.require(std::abs(tensor_value - single_copy) <= 1e-5,
                "tensor value differs from the single-copy value");

  verdict(3, "subgroup suite", check.ok, check.detail.str());
}

void criterion_4_certificates() {
  Checker check;
  const std::vector<TaskSpec> tasks = {
      TaskSpec{TaskKind::inversion},      TaskSpec{TaskKind::transposition},
      TaskSpec{TaskKind::conjugation},    TaskSpec{TaskKind::iteration, 1},
      TaskSpec{TaskKind::iteration, 3},   TaskSpec{TaskKind::inversion, 1, Subgroup::so},
      TaskSpec{TaskKind::inversion, 1, Subgroup::diag}};
  for (int d = 2; d <= 4; ++d) {
    for (const TaskSpec& task : tasks) {
      Certificate cert = verify_certificate(task, d);
      const std::string label = task_name(task) + " d=" + std::to_string(d);
      check.require(cert.primal_min_eigenvalue >= -1e-10, label + ": primal infeasible");
      check.require(cert.dual_feasible, label + ": dual witness infeasible");
      check.require(std::abs(cert.primal_value - cert.dual_value) <= 1e-8,
                    label + ": primal/dual value mismatch");
      check.require(std::abs(cert.primal_value - cert.claimed_value) <= 1e-8,
                    label + ": claimed value mismatch");
    }
  }
  verdict(4, "closed-form certificate verification", check.ok, check.detail.str());
}

void criterion_5_probabilistic_suite() {
  Checker check;

  for (int d = 2; d <= 5; ++d) {
    check.require(std::abs(closed_form_curve(TaskKind::transposition, d, 1) - 1.0 / (d * d)) <=
                      1e-12,
                  "transposition N=1 ceiling at d=" + std::to_string(d));
  }

  for (int d : {2, 3}) {
    const Matrix u0 = Matrix::Identity(d, d);
    for (auto kind : {TaskKind::transposition, TaskKind::inversion, TaskKind::conjugation}) {
      const ChoiOperator j = task_choi(TaskSpec{kind}, d, u0);
      const std::string label = std::string(to_string(kind)) + " d=" + std::to_string(d);
      double previous = 0.0;
      for (int n = 1; n <= 4; ++n) {
        const double p_bisect = max_success_probability(j, n).max_p;
        const double p_path = min_trace_norm_path(j, n).max_p;
        const double p_closed = closed_form_curve(kind, d, n);
        const double p_canonical = canonical_bound(j, n);
        const std::string point = label + " N=" + std::to_string(n);
        check.require(std::abs(p_bisect - p_path) <= 1e-3, point + ": bisection vs trace norm");
        check.require(p_bisect <= p_closed + 1e-6, point + ": exceeds the closed form");
        check.require(p_bisect <= p_canonical + 1e-6, point + ": exceeds the canonical bound");
        check.require(p_bisect >= previous - 1e-9, point + ": not monotone");
        previous = p_bisect;
      }

      const double deterministic = solve_value(TaskSpec{kind}, d, nullptr);
      const long n_star = round_up_queries(deterministic);
      check.require(max_success_probability(j, static_cast<int>(n_star)).max_p == 1.0,
                    label + ": ceiling not 1 at the deterministic budget");
      if (n_star >= 2) {
        check.require(
            max_success_probability(j, static_cast<int>(n_star - 1)).max_p < 1.0 - 1e-6,
            label + ": ceiling already 1 below the deterministic budget");
      }
    }
  }
  verdict(5, "probabilistic suite", check.ok, check.detail.str());
}

void criterion_6_derivative_engine() {
  Checker check;
  for (int d : {2, 3}) {
    const OperatorBasis basis = gellmann_basis(d);
    for (auto spec : {TaskSpec{TaskKind::inversion}, TaskSpec{TaskKind::transposition},
                      TaskSpec{TaskKind::conjugation}, TaskSpec{TaskKind::iteration, 2}}) {
      for (int seed = 1; seed <= 5; ++seed) {
        const Matrix u0 = haar_unitary(d, seed);
        const Matrix analytic = choi(analytic_derivative(spec, u0), basis).mat;
        const Matrix numeric =
            choi(finite_difference_derivative(spec, u0, 1e-4, false), basis).mat;
        std::ostringstream label;
        label << task_name(spec) << " d=" << d << " seed=" << seed;
        check.require((analytic - numeric).norm() <= 1e-6, label.str() + ": FD mismatch");
      }
    }

    // order-2 decay on the task with a genuine third-derivative remainder
    const TaskSpec iter2{TaskKind::iteration, 2};
    for (int seed = 1; seed <= 5; ++seed) {
      const Matrix u0 = haar_unitary(d, seed);
      const Matrix exact = choi(analytic_derivative(iter2, u0), basis).mat;
      const double coarse =
          (choi(finite_difference_derivative(iter2, u0, 1e-3, false), basis).mat - exact).norm();
      const double fine =
          (choi(finite_difference_derivative(iter2, u0, 5e-4, false), basis).mat - exact).norm();
      const double ratio = coarse / fine;
      std::ostringstream label;
      label << "order ratio " << ratio << " at d=" << d << " seed=" << seed;
      check.require(ratio >= 3.4 && ratio <= 4.6, label.str());
    }
  }
  verdict(6, "derivative engine", check.ok, check.detail.str());
}

void criterion_7_catalysis() {
  Checker check;
  for (int d : {2, 3}) {
    for (auto kind : {TaskKind::conjugation, TaskKind::transposition, TaskKind::inversion}) {
      const Matrix id = Matrix::Identity(d, d);
      const FuncExprPtr f = task_expr(TaskSpec{kind}, d);
      const double base = solve_primal(choi(dsl_derivative(f, id), gellmann_basis(d))).primal_value;
      for (int n : {2, 3}) {
        const double powered = solve_primal(power_map_choi(f, id, n)).primal_value;
        std::ostringstream label;
        label << to_string(kind) << " d=" << d << " n=" << n;
        check.require(std::abs(powered - n * base) <= 1e-5, label.str() + ": scaling violated");
      }
    }
  }

  check.require(catalysis_verdict(TaskSpec{TaskKind::conjugation}, 2).ruled_out,
                "conjugation d=2 not ruled out");
  check.require(catalysis_verdict(TaskSpec{TaskKind::conjugation}, 3).ruled_out,
                "conjugation d=3 not ruled out");
  check.require(catalysis_verdict(TaskSpec{TaskKind::iteration, 2}, 2).ruled_out,
                "iteration n=2 not ruled out");
  check.require(catalysis_verdict(TaskSpec{TaskKind::iteration, 3}, 2).ruled_out,
                "iteration n=3 not ruled out");
  check.require(!catalysis_verdict(TaskSpec{TaskKind::inversion}, 2, 4).ruled_out,
                "inversion d=2 with achievable 4 must stay inconclusive");
  verdict(7, "catalysis", check.ok, check.detail.str());
}

void criterion_8_property_suites() {
  Checker check;
  std::ostringstream detail;
  for (const test::SuiteResult& suite :
       {test::basis_properties(200), test::sdp_properties(200),
        test::vectorization_properties(200), test::dsl_properties(200)}) {
    check.require(suite.cases >= 200 && suite.failures == 0,
                  suite.name + ": " + std::to_string(suite.failures) + " failures");
    detail << (detail.str().empty() ? "" : ", ") << suite.name << " " << suite.cases << " cases";
  }
  verdict(8, "randomized property suites", check.ok,
          check.ok ? detail.str() : check.detail.str());
}

}  // namespace

int main() {
  criterion_1_deterministic_oracles();
  criterion_2_refined_registry();
  criterion_3_subgroup_suite();
  criterion_4_certificates();
  criterion_5_probabilistic_suite();
  criterion_6_derivative_engine();
  criterion_7_catalysis();
  criterion_8_property_suites();
  if (g_failures == 0) {
    std::printf("acceptance: all 8 criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
