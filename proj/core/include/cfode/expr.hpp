#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cfode {

/*
 * Arithmetic expressions in the two variables t and y, used for
 * right-hand sides f(t, y) and exact solutions y(t).
 *
 *   expr    := term (("+" | "-") term)*
 *   term    := factor (("*" | "/") factor)*
 *   factor  := "-" factor | power
 *   power   := primary ["^" factor]            right associative
 *   primary := number | "pi" | "e" | "t" | "y"
 *            | name "(" expr ("," expr)* ")"
 *            | "(" expr ")"
 *
 * Functions: exp, log, sin, cos, sqrt, abs (one argument) and pow (two).
 * Number literals are decimal, optionally with an exponent part.
 * There is no implicit multiplication: "2t" is a syntax error.
 */

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t position);

  // Byte offset into the source string where the error was detected.
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

enum class ExprKind { Number, VarT, VarY, Negate, Add, Sub, Mul, Div, Pow, Call };

enum class Builtin { Exp, Log, Sin, Cos, Sqrt, Abs, Pow };

struct ExprNode {
  ExprKind kind;
  double number = 0.0;                   // ExprKind::Number
  Builtin func = Builtin::Exp;           // ExprKind::Call
  std::shared_ptr<const ExprNode> lhs;   // unary operand / left operand / first argument
  std::shared_ptr<const ExprNode> rhs;   // right operand / second argument
};

// Immutable expression tree with value semantics; copies share nodes.
class Expr {
public:
  static Expr parse(std::string_view source);  // throws ParseError

  // Plain IEEE-754 double evaluation. Domain violations (log of a
  // negative number, 0^-1, ...) yield non-finite values, never errors;
  // the solver layer is responsible for divergence detection.
  double eval(double t, double y) const;
  double operator()(double t, double y) const { return eval(t, y); }

  // Reparseable text form: parse(str()) is structurally identical to *this.
  std::string str() const;

  const ExprNode& root() const { return *root_; }

private:
  explicit Expr(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}

  std::shared_ptr<const ExprNode> root_;
};

bool structurally_equal(const Expr& a, const Expr& b);

}  // namespace cfode
