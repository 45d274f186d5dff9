/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef UQC_FUNC_EXPR_HPP
#define UQC_FUNC_EXPR_HPP

#include <memory>
#include <string>

#include "uqc/task.hpp"
#include "uqc/types.hpp"

namespace uqc {

enum class FuncOp {
  identity,
  inverse,
  transpose,
  conjugate,
  power,     // U -> U^k, k a nonzero integer
  lmul,      // U -> V U
  rmul,      // U -> U V
  sandwich,  // U -> V U V^dagger
  compose,   // (f2 o f1)(U) = f2(f1(U));  outer = f2, inner = f1
  product,   // (f1 * f2)(U) = f1(U) f2(U)
};

struct FuncExpr;
using FuncExprPtr = std::shared_ptr<const FuncExpr>;

// Expression tree for a map SU(d) -> SU(d).  Immutable after construction.
struct FuncExpr {
  FuncOp op = FuncOp::identity;
  int dim = 0;
  int power_k = 0;           // power only
  Matrix fixed;              // lmul / rmul / sandwich only, an SU(dim) matrix
  std::string fixed_source;  // file path the fixed matrix was loaded from
  FuncExprPtr left;          // compose: outer f2; product: f1
  FuncExprPtr right;         // compose: inner f1; product: f2
};

inline constexpr int kMaxExprDepth = 32;

// Grammar:
//   expr := term | term "o" expr | term "*" expr
//   term := "id" | "inv" | "T" | "conj" | "pow:" int | "lmul:" file
//         | "rmul:" file | "sandwich:" file | "(" expr ")"
// "o" composes (right operand applied first), "*" is the pointwise matrix
// product; both are right-associative with equal precedence.  The Unicode
// composition sign is accepted as a synonym for "o".  Embedded matrix files
// use the shared matrix JSON format and must hold an SU(d) matrix.
FuncExprPtr parse_func_expr(const std::string& text, int d);

// Canonical text form; parse_func_expr(print_func_expr(e), d) reproduces a
// structurally equal tree.
std::string print_func_expr(const FuncExprPtr& expr);

bool structurally_equal(const FuncExprPtr& a, const FuncExprPtr& b);

int expr_depth(const FuncExprPtr& expr);

struct EvalStats {
  double max_phase_correction = 0.0;  // determinant drift removed, if any
};

// Applies the map to a unitary; the result is phase-normalized back to unit
// determinant when rounding drift accumulates.
Matrix evaluate(const FuncExprPtr& expr, const Matrix& u, EvalStats* stats = nullptr);

// Built-in tasks as expression trees ("inv", "T", "conj", "pow:n").
FuncExprPtr task_expr(const TaskSpec& task, int d);

// Leaf / combinator constructors used programmatically (tests, catalysis).
FuncExprPtr make_primitive(FuncOp op, int d, int power_k = 0);
FuncExprPtr make_fixed(FuncOp op, const Matrix& v, const std::string& source);
FuncExprPtr make_compose(const FuncExprPtr& outer, const FuncExprPtr& inner);
FuncExprPtr make_product(const FuncExprPtr& f1, const FuncExprPtr& f2);

}  // namespace uqc

#endif
