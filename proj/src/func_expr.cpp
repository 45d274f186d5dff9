/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "uqc/func_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "uqc/linalg.hpp"
#include "uqc/matrix_io.hpp"

namespace uqc {

namespace {

struct Token {
  enum Kind { atom, compose_op, product_op, lparen, rparen, end } kind = end;
  std::string text;
  size_t pos = 0;
};

bool is_delimiter(char c) {
  return c == '(' || c == ')' || c == '*' || std::isspace(static_cast<unsigned char>(c));
}

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '(') { tokens.push_back({Token::lparen, "(", i++}); continue; }
    if (c == ')') { tokens.push_back({Token::rparen, ")", i++}); continue; }
    if (c == '*') { tokens.push_back({Token::product_op, "*", i++}); continue; }
    // UTF-8 composition sign U+2218
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x98) {
      tokens.push_back({Token::compose_op, "o", i});
      i += 3;
      continue;
    }
    const size_t start = i;
    while (i < text.size() && !is_delimiter(text[i])) ++i;
    std::string atom = text.substr(start, i - start);
    if (atom == "o") {
      tokens.push_back({Token::compose_op, "o", start});
    } else {
      tokens.push_back({Token::atom, std::move(atom), start});
    }
  }
  tokens.push_back({Token::end, "", text.size()});
  return tokens;
}

[[noreturn]] void syntax_error(const std::string& message, size_t pos) {
  std::ostringstream msg;
  msg << "func expression syntax error at position " << pos << ": " << message;
  throw InvalidInput(msg.str());
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, int d) : tokens_(std::move(tokens)), d_(d) {}

  FuncExprPtr parse() {
    FuncExprPtr expr = parse_expr(0);
    if (peek().kind != Token::end) syntax_error("trailing input", peek().pos);
    return expr;
  }

 private:
  const Token& peek() const { return tokens_[cursor_]; }
  Token next() { return tokens_[cursor_++]; }

  FuncExprPtr parse_expr(int depth) {
    if (depth > kMaxExprDepth) syntax_error("expression too deeply nested", peek().pos);
    FuncExprPtr lhs = parse_term(depth);
    const Token& t = peek();
    if (t.kind == Token::compose_op) {
      next();
      return make_compose(lhs, parse_expr(depth + 1));
    }
    if (t.kind == Token::product_op) {
      next();
      return make_product(lhs, parse_expr(depth + 1));
    }
    return lhs;
  }

  FuncExprPtr parse_term(int depth) {
    const Token t = next();
    if (t.kind == Token::lparen) {
      FuncExprPtr inner = parse_expr(depth + 1);
      if (peek().kind != Token::rparen) syntax_error("expected ')'", peek().pos);
      next();
      return inner;
    }
    if (t.kind != Token::atom) syntax_error("expected a term", t.pos);

    const auto colon = t.text.find(':');
    const std::string head = t.text.substr(0, colon);
    const bool has_arg = colon != std::string::npos;
    const std::string arg = has_arg ? t.text.substr(colon + 1) : "";

    if (head == "id" && !has_arg) return make_primitive(FuncOp::identity, d_);
    if (head == "inv" && !has_arg) return make_primitive(FuncOp::inverse, d_);
    if (head == "T" && !has_arg) return make_primitive(FuncOp::transpose, d_);
    if (head == "conj" && !has_arg) return make_primitive(FuncOp::conjugate, d_);

    if (head == "pow") {
      if (!has_arg || arg.empty()) syntax_error("pow: requires an integer", t.pos);
      char* end = nullptr;
      const long k = std::strtol(arg.c_str(), &end, 10);
      if (end == arg.c_str() || *end != '\0') syntax_error("pow: malformed integer", t.pos);
      if (k == 0) syntax_error("pow:0 is not allowed", t.pos);
      return make_primitive(FuncOp::power, d_, static_cast<int>(k));
    }

    if (head == "lmul" || head == "rmul" || head == "sandwich") {
      if (!has_arg || arg.empty()) syntax_error(head + ": requires a matrix file", t.pos);
      Matrix v = load_matrix(arg, MatrixFileCheck::special_unitary);
      if (v.rows() != d_) {
        std::ostringstream msg;
        msg << head << ": matrix file '" << arg << "' has dimension " << v.rows()
            << ", expected " << d_;
        throw InvalidInput(msg.str());
      }
      const FuncOp op = head == "lmul" ? FuncOp::lmul
                        : head == "rmul" ? FuncOp::rmul
                                         : FuncOp::sandwich;
      return make_fixed(op, v, arg);
    }

    syntax_error("unknown primitive '" + t.text + "'", t.pos);
  }

  std::vector<Token> tokens_;
  size_t cursor_ = 0;
  int d_;
};

bool is_combinator(FuncOp op) { return op == FuncOp::compose || op == FuncOp::product; }

std::string print_term(const FuncExprPtr& expr) {
  if (is_combinator(expr->op)) return "(" + print_func_expr(expr) + ")";
  return print_func_expr(expr);
}

Matrix integer_power(const Matrix& u, int k) {
  const Matrix base = k >= 0 ? u : Matrix(u.adjoint());
  Matrix out = Matrix::Identity(u.rows(), u.cols());
  for (int i = 0; i < std::abs(k); ++i) out = out * base;
  return out;
}

}  // namespace

FuncExprPtr make_primitive(FuncOp op, int d, int power_k) {
  auto node = std::make_shared<FuncExpr>();
  node->op = op;
  node->dim = d;
  node->power_k = power_k;
  return node;
}

FuncExprPtr make_fixed(FuncOp op, const Matrix& v, const std::string& source) {
  require_unitary(v, kUnitaryTol, "fixed matrix");
  if (std::abs(v.determinant() - Complex(1.0, 0.0)) > kUnitaryTol) {
    throw InvalidInput("fixed matrix is not in SU(d): determinant differs from 1");
  }
  auto node = std::make_shared<FuncExpr>();
  node->op = op;
  node->dim = static_cast<int>(v.rows());
  node->fixed = v;
  node->fixed_source = source;
  return node;
}

FuncExprPtr make_compose(const FuncExprPtr& outer, const FuncExprPtr& inner) {
  if (outer->dim != inner->dim) throw InvalidInput("compose: dimension mismatch");
  auto node = std::make_shared<FuncExpr>();
  node->op = FuncOp::compose;
  node->dim = outer->dim;
  node->left = outer;
  node->right = inner;
  if (expr_depth(node) > kMaxExprDepth) throw InvalidInput("expression too deeply nested");
  return node;
}

FuncExprPtr make_product(const FuncExprPtr& f1, const FuncExprPtr& f2) {
  if (f1->dim != f2->dim) throw InvalidInput("product: dimension mismatch");
  auto node = std::make_shared<FuncExpr>();
  node->op = FuncOp::product;
  node->dim = f1->dim;
  node->left = f1;
  node->right = f2;
  if (expr_depth(node) > kMaxExprDepth) throw InvalidInput("expression too deeply nested");
  return node;
}

FuncExprPtr parse_func_expr(const std::string& text, int d) {
  if (d < 2) throw InvalidInput("parse_func_expr: dimension must be at least 2");
  return Parser(tokenize(text), d).parse();
}

std::string print_func_expr(const FuncExprPtr& expr) {
  switch (expr->op) {
    case FuncOp::identity: return "id";
    case FuncOp::inverse: return "inv";
    case FuncOp::transpose: return "T";
    case FuncOp::conjugate: return "conj";
    case FuncOp::power: return "pow:" + std::to_string(expr->power_k);
    case FuncOp::lmul: return "lmul:" + expr->fixed_source;
    case FuncOp::rmul: return "rmul:" + expr->fixed_source;
    case FuncOp::sandwich: return "sandwich:" + expr->fixed_source;
    case FuncOp::compose: return print_term(expr->left) + " o " + print_func_expr(expr->right);
    case FuncOp::product: return print_term(expr->left) + " * " + print_func_expr(expr->right);
  }
  return "";
}

bool structurally_equal(const FuncExprPtr& a, const FuncExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->op != b->op || a->dim != b->dim || a->power_k != b->power_k) return false;
  if (a->fixed_source != b->fixed_source) return false;
  if (a->fixed.size() != b->fixed.size() || (a->fixed.size() > 0 && a->fixed != b->fixed)) {
    return false;
  }
  return structurally_equal(a->left, b->left) && structurally_equal(a->right, b->right);
}

int expr_depth(const FuncExprPtr& expr) {
  if (!expr) return 0;
  return 1 + std::max(expr_depth(expr->left), expr_depth(expr->right));
}

Matrix evaluate(const FuncExprPtr& expr, const Matrix& u, EvalStats* stats) {
  require_unitary(u, kUnitaryTol, "evaluate input");
  if (u.rows() != expr->dim) throw InvalidInput("evaluate: dimension mismatch");

  Matrix out;
  switch (expr->op) {
    case FuncOp::identity: out = u; break;
    case FuncOp::inverse: out = u.adjoint(); break;
    case FuncOp::transpose: out = u.transpose(); break;
    case FuncOp::conjugate: out = u.conjugate(); break;
    case FuncOp::power: out = integer_power(u, expr->power_k); break;
    case FuncOp::lmul: out = expr->fixed * u; break;
    case FuncOp::rmul: out = u * expr->fixed; break;
    case FuncOp::sandwich: out = expr->fixed * u * expr->fixed.adjoint(); break;
    case FuncOp::compose: out = evaluate(expr->left, evaluate(expr->right, u, stats), stats); break;
    case FuncOp::product:
      out = evaluate(expr->left, u, stats) * evaluate(expr->right, u, stats);
      break;
  }

  // All primitives preserve unit determinant exactly; remove rounding drift.
  const Complex det = out.determinant();
  const double drift = std::abs(det - Complex(1.0, 0.0));
  if (drift > 1e-12 && std::abs(det) > 0.5) {
    const double theta = std::arg(det);
    out *= std::exp(Complex(0.0, -theta / expr->dim));
    if (stats) stats->max_phase_correction = std::max(stats->max_phase_correction, drift);
  }
  return out;
}

FuncExprPtr task_expr(const TaskSpec& task, int d) {
  switch (task.kind) {
    case TaskKind::inversion: return make_primitive(FuncOp::inverse, d);
    case TaskKind::transposition: return make_primitive(FuncOp::transpose, d);
    case TaskKind::conjugation: return make_primitive(FuncOp::conjugate, d);
    case TaskKind::iteration:
      if (task.iteration_n < 1) throw InvalidInput("iteration order must be positive");
      return make_primitive(FuncOp::power, d, task.iteration_n);
  }
  throw InvalidInput("task_expr: unknown task");
}

}  // namespace uqc
