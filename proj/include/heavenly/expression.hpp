#pragma once

#include <memory>
#include <stdexcept>
#include <string>

namespace heavenly {

enum class Var { x, x1, x2, y, t };

struct Vars {
  double x = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double y = 0.0;
  double t = 0.0;
  double get(Var v) const;
};

struct SyntaxError : std::runtime_error {
  int position;
  SyntaxError(int position_, const std::string& message);
};

struct UnknownIdentifier : std::runtime_error {
  int position;
  std::string name;
  UnknownIdentifier(int position_, const std::string& name_);
};

struct ExprNode;

// immutable AST; default-constructed value is the constant 0
class Expression {
 public:
  Expression() = default;
  double eval(const Vars& at) const;
  Expression diff(Var v) const;
  bool is_constant(double* value = nullptr) const;
  std::string str() const;

 private:
  explicit Expression(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}
  std::shared_ptr<const ExprNode> root_;
  friend Expression parse_expression(const std::string& text);
};

// grammar: + - * / ^ with the usual precedence, unary minus, sin cos exp,
// variables x x1 x2 y t.  ^ is right associative and the exponent has to
// fold to a constant so the derivative stays inside the node set.
Expression parse_expression(const std::string& text);

}  // namespace heavenly
