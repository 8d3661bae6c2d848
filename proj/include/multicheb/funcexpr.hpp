#pragma once

// Expression language for target functions.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | variable | call | '(' expr ')'
//   call    := name '(' expr (',' expr)* ')'
//
// Variables are x1, x2, ... with x, y, z as aliases for x1, x2, x3.
// Functions: min, max (two or more arguments), abs, sqrt (one), norm (one or
// more; Euclidean norm of its arguments). Exponents must evaluate to integers.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multicheb/errors.hpp"

namespace multicheb {

class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : InputError(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class EvalError : public InputError {
 public:
  using InputError::InputError;
};

enum class ExprKind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Min, Max, Abs, Sqrt, Norm };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprKind kind = ExprKind::Number;
  double value = 0.0;       // Number
  std::size_t var = 0;      // Variable, zero-based
  std::vector<Expr> args;   // operands / call arguments
};

Expr parse_expr(std::string_view text);

// Throws EvalError on division by zero, sqrt of a negative number, a
// non-integer exponent, a non-finite result, or a missing variable.
double eval_expr(const Expr& e, std::span<const double> x);

struct EvalOutcome {
  bool ok = false;
  double value = 0.0;
  std::string error;
};

EvalOutcome try_eval(const Expr& e, std::span<const double> x) noexcept;

// Fully parenthesized; parse(print(e)) is structurally equal to e.
std::string print_expr(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

// Number of coordinates the expression needs (largest variable index + 1).
std::size_t variables_needed(const Expr& e);

}  // namespace multicheb
