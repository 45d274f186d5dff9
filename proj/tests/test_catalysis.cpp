/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <doctest.h>

#include "support.hpp"
#include "uqc/catalysis.hpp"
#include "uqc/linalg.hpp"

using namespace uqc;

TEST_CASE("power map scales the Choi operator") {
  const Matrix i2 = Matrix::Identity(2, 2);
  const ChoiOperator j3 = power_map_choi(TaskSpec{TaskKind::conjugation}, i2, 3);
  const Matrix expected =
      3.0 * (-swap_operator(2) + 0.5 * Matrix::Identity(4, 4));
  CHECK((j3.mat - expected).norm() <= 1e-12);

  const ChoiOperator j1 = power_map_choi(TaskSpec{TaskKind::conjugation}, i2, 1);
  const ChoiOperator base = task_choi(TaskSpec{TaskKind::conjugation}, 2, i2);
  CHECK((j1.mat - base.mat).norm() <= 1e-12);

  // explicit product expression as an independent route
  const FuncExprPtr conj = parse_func_expr("conj", 2);
  const FuncExprPtr threefold = parse_func_expr("conj * conj * conj", 2);
  const ChoiOperator via_product = choi(dsl_derivative(threefold, i2), gellmann_basis(2));
  CHECK((via_product.mat - 3.0 * base.mat).norm() <= 1e-7);
  (void)conj;
}

TEST_CASE("power map rejects base points away from the fixed point") {
  const Matrix u0 = haar_unitary(2, 6);  // f(U0) = U0^* != I
  try {
    power_map_choi(TaskSpec{TaskKind::conjugation}, u0, 2);
    FAIL("expected rejection");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("f(U0) - I") != std::string::npos);
  }
  CHECK_THROWS_AS(power_map_choi(TaskSpec{TaskKind::conjugation}, Matrix::Identity(2, 2), 0),
                  InvalidInput);
}

TEST_CASE("bound scales homogeneously under output powers") {
  for (int d : {2, 3}) {
    for (auto kind : {TaskKind::conjugation, TaskKind::transposition, TaskKind::inversion}) {
      const Matrix id = Matrix::Identity(d, d);
      const FuncExprPtr f = task_expr(TaskSpec{kind}, d);
      SdpSolution base = solve_primal(choi(dsl_derivative(f, id), gellmann_basis(d)));
      for (int n : {2, 3}) {
        SdpSolution powered = solve_primal(power_map_choi(f, id, n));
        CHECK(std::abs(powered.primal_value - n * base.primal_value) <= 1e-5);
      }
    }
  }
}

TEST_CASE("verdicts") {
  CatalysisVerdict conj3 = catalysis_verdict(TaskSpec{TaskKind::conjugation}, 3, 2);
  CHECK(conj3.ruled_out);
  CHECK(conj3.known_achievable_n == 2);
  REQUIRE(conj3.scaling.size() == 2);
  CHECK(std::abs(conj3.scaling[0].measured_ratio - 2.0) <= 1e-5);
  CHECK(std::abs(conj3.scaling[1].measured_ratio - 3.0) <= 1e-5);

  CatalysisVerdict iter2 = catalysis_verdict(TaskSpec{TaskKind::iteration, 2}, 2, 2);
  CHECK(iter2.ruled_out);

  CatalysisVerdict inv2 = catalysis_verdict(TaskSpec{TaskKind::inversion}, 2, 4);
  CHECK(!inv2.ruled_out);  // SDP value 3 != 4

  // registry defaults kick in when no count is supplied
  CatalysisVerdict conj_default = catalysis_verdict(TaskSpec{TaskKind::conjugation}, 4);
  CHECK(conj_default.known_achievable_n == 3);
  CHECK(conj_default.ruled_out);

  // perturbing a tight count upward flips the verdict
  CatalysisVerdict perturbed = catalysis_verdict(TaskSpec{TaskKind::conjugation}, 3, 3);
  CHECK(!perturbed.ruled_out);

  CHECK_THROWS_AS(
      catalysis_verdict(TaskSpec{TaskKind::inversion, 1, Subgroup::so}, 2, std::nullopt),
      InvalidInput);
}
