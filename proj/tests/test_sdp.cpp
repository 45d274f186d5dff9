/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "uqc/certificates.hpp"
#include "uqc/derivative.hpp"
#include "uqc/linalg.hpp"
#include "uqc/sdp.hpp"

using namespace uqc;

namespace {

void check_solution_invariants(const ChoiOperator& j, const SdpSolution& s) {
  CHECK(s.status == SolveStatus::optimal);
  CHECK(s.gap >= -1e-9);
  CHECK(s.gap <= 1e-6);
  CHECK(min_eigenvalue(s.gamma) >= -1e-9);
  CHECK((partial_trace(s.gamma, 2) - Matrix::Identity(j.local_dim, j.local_dim)).norm() <= 1e-8);
}

ChoiOperator random_choi(int d, std::uint64_t seed) {
  // A Hermitian operator with vanishing marginals, the shape every derivative
  // Choi has; weak duality holds for any Hermitian input.
  test::Rng rng(seed);
  const OperatorBasis basis = gellmann_basis(d);
  Matrix j = Matrix::Zero(d * d, d * d);
  for (const Matrix& a : basis.elements)
    for (const Matrix& b : basis.elements) {
      if (rng.uniform(0, 1) < 0.2) j += rng.uniform(-1, 1) * kron(a.conjugate(), b);
    }
  ChoiOperator out;
  out.local_dim = d;
  out.mat = hermitian_part(j);
  out.source = "random";
  return out;
}

}  // namespace

TEST_CASE("primal closed forms") {
  const Matrix u2 = Matrix::Identity(2, 2);
  const ChoiOperator j_inv = task_choi(TaskSpec{TaskKind::inversion}, 2, u2);
  SdpSolution s = solve_primal(j_inv);
  CHECK(std::abs(s.primal_value - 3.0) <= 1e-5);
  check_solution_invariants(j_inv, s);
  // the optimizer's beta is admissible
  CHECK(min_eigenvalue(j_inv.mat + kron(s.beta, u2)) >= -1e-9);
  // and the book solution beta = 1.5 I is admissible too
  CHECK(min_eigenvalue(j_inv.mat + kron(1.5 * u2, u2)) >= -1e-12);

  ChoiOperator zero;
  zero.local_dim = 2;
  zero.mat = Matrix::Zero(4, 4);
  SdpSolution sz = solve_primal(zero);
  CHECK(sz.primal_value == 0.0);
  CHECK(sz.beta.norm() == 0.0);

  const ChoiOperator j_conj =
      task_choi(TaskSpec{TaskKind::conjugation}, 4, Matrix::Identity(4, 4));
  SdpSolution sc = solve_primal(j_conj);
  CHECK(std::abs(sc.primal_value - 3.0) <= 1e-5);
  check_solution_invariants(j_conj, sc);
}

TEST_CASE("independent dual solves") {
  const ChoiOperator j_inv =
      task_choi(TaskSpec{TaskKind::inversion}, 2, Matrix::Identity(2, 2));
  SdpSolution s = solve_dual(j_inv);
  CHECK(std::abs(s.dual_value - 3.0) <= 1e-5);
  CHECK(min_eigenvalue(s.gamma) >= -1e-9);
  CHECK((partial_trace(s.gamma, 2) - Matrix::Identity(2, 2)).norm() <= 1e-8);
  // the maximally entangled dyad is the ideal witness here
  CHECK((s.gamma - max_entangled_dyad(2)).norm() <= 1e-2);
  CHECK(s.gap >= -1e-9);

  const ChoiOperator j_t =
      task_choi(TaskSpec{TaskKind::transposition}, 3, Matrix::Identity(3, 3));
  SdpSolution st = solve_dual(j_t);
  CHECK(std::abs(st.dual_value - 4.0) <= 1e-5);

  const ChoiOperator j_it =
      task_choi(TaskSpec{TaskKind::iteration, 2}, 2, Matrix::Identity(2, 2));
  SdpSolution si = solve_dual(j_it);
  CHECK(std::abs(si.dual_value - 2.0) <= 1e-5);
}

TEST_CASE("subgroup primal values") {
  const Matrix i2 = Matrix::Identity(2, 2);
  SubgroupChoi so2 = task_subgroup_choi(TaskSpec{TaskKind::inversion, 1, Subgroup::so}, 2, i2);
  SdpSolution s_so = solve_subgroup(so2.fixed, so2.complement);
  CHECK(std::abs(s_so.primal_value - 1.0) <= 1e-5);
  CHECK(s_so.free_complement.size() == so2.complement.elements.size());

  SubgroupChoi diag3 =
      task_subgroup_choi(TaskSpec{TaskKind::inversion, 1, Subgroup::diag}, 3,
                         Matrix::Identity(3, 3));
  SdpSolution s_diag = solve_subgroup(diag3.fixed, diag3.complement);
  CHECK(std::abs(s_diag.primal_value - 2.0) <= 1e-5);

  SubgroupChoi tensor22 = task_subgroup_choi(
      TaskSpec{TaskKind::inversion, 1, Subgroup::tensor, 2}, 2, Matrix::Identity(4, 4));
  SdpSolution s_tensor = solve_subgroup(tensor22.fixed, tensor22.complement);
  CHECK(std::abs(s_tensor.primal_value - 3.0) <= 1e-5);

  // single-copy value for comparison
  SdpSolution single = solve_primal(task_choi(TaskSpec{TaskKind::inversion}, 2, i2));
  CHECK(std::abs(s_tensor.primal_value - single.primal_value) <= 1e-5);
}

TEST_CASE("subgroup dual solves") {
  SubgroupChoi so3 = task_subgroup_choi(TaskSpec{TaskKind::inversion, 1, Subgroup::so}, 3,
                                        Matrix::Identity(3, 3));
  SdpSolution s = solve_dual_subgroup(so3.fixed, so3.complement);
  CHECK(std::abs(s.dual_value - 2.0) <= 1e-5);
  // witness satisfies the subgroup orthogonality constraints
  for (const Matrix& b : so3.complement.elements) {
    const Matrix y = partial_trace(kron(b.conjugate(), Matrix::Identity(3, 3)) * s.gamma, 1);
    CHECK(y.norm() <= 1e-7);
  }

  SubgroupChoi diag2 = task_subgroup_choi(TaskSpec{TaskKind::inversion, 1, Subgroup::diag},
                                          2, Matrix::Identity(2, 2));
  SdpSolution sd = solve_dual_subgroup(diag2.fixed, diag2.complement);
  CHECK(std::abs(sd.dual_value - 1.0) <= 1e-5);

  // degenerate complement reduces to the plain dual
  const ChoiOperator j = task_choi(TaskSpec{TaskKind::inversion}, 2, Matrix::Identity(2, 2));
  OperatorBasis empty;
  empty.dim = 2;
  SdpSolution plain = solve_dual(j);
  SdpSolution via_subgroup = solve_dual_subgroup(j, empty);
  CHECK(std::abs(plain.dual_value - via_subgroup.dual_value) <= 1e-7);
}

TEST_CASE("weak duality and scaling on random instances") {
  for (int d : {2, 3}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const ChoiOperator j = random_choi(d, 100 * d + seed);
      SdpSolution s = solve_primal(j);
      check_solution_invariants(j, s);

      for (double c : {2.0, 5.0}) {
        ChoiOperator scaled = j;
        scaled.mat *= c;
        SdpSolution sc = solve_primal(scaled);
        CHECK(std::abs(sc.primal_value - c * s.primal_value) <= 1e-6 * std::max(1.0, c * s.primal_value));
      }
    }
  }
}

TEST_CASE("closed forms hold at the upper end of the dimension range") {
  const ChoiOperator j =
      task_choi(TaskSpec{TaskKind::transposition}, 6, Matrix::Identity(6, 6));
  SdpSolution s = solve_primal(j);
  CHECK(std::abs(s.primal_value - 7.0) <= 1e-5);
  CHECK(s.gap >= -1e-9);
  CHECK(s.gap <= 1e-6);
}

TEST_CASE("value is frame covariant for base-point-dependent tasks") {
  for (auto spec : {TaskSpec{TaskKind::conjugation}, TaskSpec{TaskKind::iteration, 2}}) {
    SdpSolution at_identity =
        solve_primal(task_choi(spec, 3, Matrix::Identity(3, 3)));
    for (int seed : {4, 9}) {
      SdpSolution at_haar = solve_primal(task_choi(spec, 3, haar_unitary(3, seed)));
      CHECK(std::abs(at_identity.primal_value - at_haar.primal_value) <= 1e-6);
    }
  }
}

TEST_CASE("subgroup promise never raises the bound") {
  for (int d : {2, 3}) {
    const Matrix u0 = Matrix::Identity(d, d);
    for (auto kind :
         {TaskKind::inversion, TaskKind::transposition, TaskKind::conjugation}) {
      SdpSolution full = solve_primal(task_choi(TaskSpec{kind}, d, u0));
      for (auto sub : {Subgroup::so, Subgroup::diag}) {
        SubgroupChoi sc = task_subgroup_choi(TaskSpec{kind, 1, sub}, d, u0);
        SdpSolution restricted = solve_subgroup(sc.fixed, sc.complement);
        CHECK(restricted.primal_value <= full.primal_value + 1e-8);
      }
    }
  }
}

TEST_CASE("certificates for the registry tasks") {
  Certificate conj5 = verify_certificate(TaskSpec{TaskKind::conjugation}, 5);
  CHECK(conj5.claimed_value == doctest::Approx(4.0));
  CHECK(conj5.primal_feasible);
  CHECK(conj5.dual_feasible);
  CHECK(conj5.values_match);

  Certificate so2 = verify_certificate(TaskSpec{TaskKind::inversion, 1, Subgroup::so}, 2);
  CHECK(so2.claimed_value == doctest::Approx(1.0));
  CHECK((so2.primal_beta - 0.5 * Matrix::Identity(2, 2)).norm() <= 1e-12);  // b = 1/2
  for (const Matrix& bp : so2.primal_complement) CHECK(bp.norm() <= 1e-12);  // a = 0
  CHECK(so2.values_match);

  // iteration certificate at a diagonal-phase base point
  test::Rng rng(2);
  Matrix u0 = Matrix::Zero(3, 3);
  double phases[3];
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    phases[i] = rng.uniform(-1.0, 1.0);
    sum += phases[i];
  }
  for (int i = 0; i < 3; ++i) u0(i, i) = std::exp(Complex(0, phases[i] - sum / 3.0));
  Certificate iter4 = verify_certificate(TaskSpec{TaskKind::iteration, 4}, 3, u0);
  CHECK(iter4.claimed_value == doctest::Approx(4.0));
  CHECK(iter4.values_match);
  CHECK((iter4.primal_beta - (4.0 / 3.0) * Matrix::Identity(3, 3)).norm() <= 1e-12);

  CHECK_THROWS_AS(
      verify_certificate(TaskSpec{TaskKind::transposition, 1, Subgroup::so}, 3),
      InvalidInput);
}

TEST_CASE("refined bounds") {
  auto inv3 = refined_bound(TaskKind::inversion, 3);
  REQUIRE(inv3.has_value());
  CHECK(inv3->value == doctest::Approx(9.0));
  CHECK(!inv3->intermediate.has_value());

  auto t2 = refined_bound(TaskKind::transposition, 2);
  REQUIRE(t2.has_value());
  CHECK(t2->value == doctest::Approx(4.0));

  auto t5 = refined_bound(TaskKind::transposition, 5);
  REQUIRE(t5.has_value());
  CHECK(t5->value == doctest::Approx(8.0));
  REQUIRE(t5->intermediate.has_value());
  CHECK(*t5->intermediate == doctest::Approx(5.0 + 3.0 - 5.0 / 8.0));

  auto c7 = refined_bound(TaskKind::conjugation, 7);
  REQUIRE(c7.has_value());
  CHECK(c7->value == doctest::Approx(6.0));

  CHECK(!refined_bound(TaskKind::iteration, 3).has_value());

  CHECK(round_up_queries(3.0000000001) == 3);
  CHECK(round_up_queries(3.1) == 4);
}
