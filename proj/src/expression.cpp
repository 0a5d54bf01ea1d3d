#include "heavenly/expression.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>
#include <vector>

namespace heavenly {

double Vars::get(Var v) const {
  switch (v) {
    case Var::x: return x;
    case Var::x1: return x1;
    case Var::x2: return x2;
    case Var::y: return y;
    case Var::t: return t;
  }
  return 0.0;
}

SyntaxError::SyntaxError(int position_, const std::string& message)
    : std::runtime_error(message + " at position " + std::to_string(position_)),
      position(position_) {}

UnknownIdentifier::UnknownIdentifier(int position_, const std::string& name_)
    : std::runtime_error("unknown identifier '" + name_ + "' at position " +
                         std::to_string(position_)),
      position(position_),
      name(name_) {}

struct ExprNode {
  enum Kind { kConst, kVar, kAdd, kSub, kMul, kDiv, kPow, kNeg, kSin, kCos, kExp };
  Kind kind;
  double value = 0.0;  // kConst payload, kPow exponent
  Var var = Var::x;
  std::shared_ptr<const ExprNode> a, b;
};

namespace {

using P = std::shared_ptr<const ExprNode>;

P cnst(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::kConst;
  n->value = v;
  return n;
}

P variable(Var v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::kVar;
  n->var = v;
  return n;
}

bool const_of(const P& p, double* v) {
  if (p->kind != ExprNode::kConst) return false;
  if (v) *v = p->value;
  return true;
}

P binary(ExprNode::Kind k, P a, P b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

P unary(ExprNode::Kind k, P a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->a = std::move(a);
  return n;
}

P neg(P a);

P add(P a, P b) {
  double u, v;
  if (const_of(a, &u) && const_of(b, &v)) return cnst(u + v);
  if (const_of(a, &u) && u == 0.0) return b;
  if (const_of(b, &v) && v == 0.0) return a;
  return binary(ExprNode::kAdd, std::move(a), std::move(b));
}

P sub(P a, P b) {
  double u, v;
  if (const_of(a, &u) && const_of(b, &v)) return cnst(u - v);
  if (const_of(b, &v) && v == 0.0) return a;
  if (const_of(a, &u) && u == 0.0) return neg(std::move(b));
  return binary(ExprNode::kSub, std::move(a), std::move(b));
}

P mul(P a, P b) {
  double u, v;
  if (const_of(a, &u) && const_of(b, &v)) return cnst(u * v);
  if (const_of(a, &u)) {
    if (u == 0.0) return cnst(0.0);
    if (u == 1.0) return b;
  }
  if (const_of(b, &v)) {
    if (v == 0.0) return cnst(0.0);
    if (v == 1.0) return a;
  }
  return binary(ExprNode::kMul, std::move(a), std::move(b));
}

P quot(P a, P b) {
  double u, v;
  if (const_of(a, &u) && const_of(b, &v)) return cnst(u / v);
  if (const_of(a, &u) && u == 0.0) return cnst(0.0);
  if (const_of(b, &v) && v == 1.0) return a;
  return binary(ExprNode::kDiv, std::move(a), std::move(b));
}

P neg(P a) {
  double u;
  if (const_of(a, &u)) return cnst(-u);
  if (a->kind == ExprNode::kNeg) return a->a;
  return unary(ExprNode::kNeg, std::move(a));
}

P power(P a, double c) {
  double u;
  if (c == 0.0) return cnst(1.0);
  if (c == 1.0) return a;
  if (const_of(a, &u)) return cnst(std::pow(u, c));
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::kPow;
  n->a = std::move(a);
  n->value = c;
  return n;
}

P call(ExprNode::Kind k, P a) {
  double u;
  if (const_of(a, &u)) {
    switch (k) {
      case ExprNode::kSin: return cnst(std::sin(u));
      case ExprNode::kCos: return cnst(std::cos(u));
      default: return cnst(std::exp(u));
    }
  }
  return unary(k, std::move(a));
}

double eval_node(const ExprNode& n, const Vars& at) {
  switch (n.kind) {
    case ExprNode::kConst: return n.value;
    case ExprNode::kVar: return at.get(n.var);
    case ExprNode::kAdd: return eval_node(*n.a, at) + eval_node(*n.b, at);
    case ExprNode::kSub: return eval_node(*n.a, at) - eval_node(*n.b, at);
    case ExprNode::kMul: return eval_node(*n.a, at) * eval_node(*n.b, at);
    case ExprNode::kDiv: return eval_node(*n.a, at) / eval_node(*n.b, at);
    case ExprNode::kPow: return std::pow(eval_node(*n.a, at), n.value);
    case ExprNode::kNeg: return -eval_node(*n.a, at);
    case ExprNode::kSin: return std::sin(eval_node(*n.a, at));
    case ExprNode::kCos: return std::cos(eval_node(*n.a, at));
    case ExprNode::kExp: return std::exp(eval_node(*n.a, at));
  }
  return 0.0;
}

P diff_node(const P& n, Var v) {
  switch (n->kind) {
    case ExprNode::kConst: return cnst(0.0);
    case ExprNode::kVar: return cnst(n->var == v ? 1.0 : 0.0);
    case ExprNode::kAdd: return add(diff_node(n->a, v), diff_node(n->b, v));
    case ExprNode::kSub: return sub(diff_node(n->a, v), diff_node(n->b, v));
    case ExprNode::kMul:
      return add(mul(diff_node(n->a, v), n->b), mul(n->a, diff_node(n->b, v)));
    case ExprNode::kDiv:
      return quot(sub(mul(diff_node(n->a, v), n->b), mul(n->a, diff_node(n->b, v))),
                  mul(n->b, n->b));
    case ExprNode::kPow:
      return mul(mul(cnst(n->value), power(n->a, n->value - 1.0)), diff_node(n->a, v));
    case ExprNode::kNeg: return neg(diff_node(n->a, v));
    case ExprNode::kSin: return mul(call(ExprNode::kCos, n->a), diff_node(n->a, v));
    case ExprNode::kCos: return neg(mul(call(ExprNode::kSin, n->a), diff_node(n->a, v)));
    case ExprNode::kExp: return mul(call(ExprNode::kExp, n->a), diff_node(n->a, v));
  }
  return cnst(0.0);
}

std::string fmt_num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string str_node(const ExprNode& n) {
  switch (n.kind) {
    case ExprNode::kConst: return fmt_num(n.value);
    case ExprNode::kVar:
      switch (n.var) {
        case Var::x: return "x";
        case Var::x1: return "x1";
        case Var::x2: return "x2";
        case Var::y: return "y";
        case Var::t: return "t";
      }
      return "?";
    case ExprNode::kAdd: return "(" + str_node(*n.a) + "+" + str_node(*n.b) + ")";
    case ExprNode::kSub: return "(" + str_node(*n.a) + "-" + str_node(*n.b) + ")";
    case ExprNode::kMul: return "(" + str_node(*n.a) + "*" + str_node(*n.b) + ")";
    case ExprNode::kDiv: return "(" + str_node(*n.a) + "/" + str_node(*n.b) + ")";
    case ExprNode::kPow: return "(" + str_node(*n.a) + "^" + fmt_num(n.value) + ")";
    case ExprNode::kNeg: return "(-" + str_node(*n.a) + ")";
    case ExprNode::kSin: return "sin(" + str_node(*n.a) + ")";
    case ExprNode::kCos: return "cos(" + str_node(*n.a) + ")";
    case ExprNode::kExp: return "exp(" + str_node(*n.a) + ")";
  }
  return "?";
}

struct Token {
  enum Kind { kNum, kIdent, kPunct, kEnd };
  Kind kind;
  double num = 0.0;
  std::string text;
  char punct = 0;
  int pos = 0;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    if ((c >= '0' && c <= '9') ||
        (c == '.' && i + 1 < text.size() && text[i + 1] >= '0' && text[i + 1] <= '9')) {
      const char* start = text.c_str() + i;
      char* end = nullptr;
      double v = std::strtod(start, &end);
      Token t;
      t.kind = Token::kNum;
      t.num = v;
      t.pos = int(i);
      out.push_back(t);
      i += std::size_t(end - start);
      continue;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      std::size_t j = i + 1;
      while (j < text.size() &&
             ((text[j] >= 'a' && text[j] <= 'z') || (text[j] >= 'A' && text[j] <= 'Z') ||
              (text[j] >= '0' && text[j] <= '9') || text[j] == '_'))
        ++j;
      Token t;
      t.kind = Token::kIdent;
      t.text = text.substr(i, j - i);
      t.pos = int(i);
      out.push_back(t);
      i = j;
      continue;
    }
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^' || c == '(' || c == ')') {
      Token t;
      t.kind = Token::kPunct;
      t.punct = c;
      t.pos = int(i);
      out.push_back(t);
      ++i;
      continue;
    }
    throw SyntaxError(int(i), "unexpected character");
  }
  Token end;
  end.kind = Token::kEnd;
  end.pos = int(text.size());
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  P run() {
    P e = parse_expr();
    if (cur().kind != Token::kEnd) throw SyntaxError(cur().pos, "unexpected trailing input");
    return e;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  bool is_punct(char c) const {
    return cur().kind == Token::kPunct && cur().punct == c;
  }

  P parse_expr() {
    P e = parse_term();
    while (is_punct('+') || is_punct('-')) {
      char op = cur().punct;
      ++i_;
      P r = parse_term();
      e = (op == '+') ? add(std::move(e), std::move(r)) : sub(std::move(e), std::move(r));
    }
    return e;
  }

  P parse_term() {
    P e = parse_unary();
    while (is_punct('*') || is_punct('/')) {
      char op = cur().punct;
      ++i_;
      P r = parse_unary();
      e = (op == '*') ? mul(std::move(e), std::move(r)) : quot(std::move(e), std::move(r));
    }
    return e;
  }

  P parse_unary() {
    if (is_punct('-')) {
      ++i_;
      return neg(parse_unary());
    }
    if (is_punct('+')) {
      ++i_;
      return parse_unary();
    }
    return parse_power();
  }

  P parse_power() {
    P base = parse_atom();
    if (is_punct('^')) {
      int caret = cur().pos;
      ++i_;
      P e = parse_unary();
      double c = 0.0;
      if (!const_of(e, &c)) throw SyntaxError(caret, "exponent must be a constant expression");
      return power(std::move(base), c);
    }
    return base;
  }

  P parse_atom() {
    const Token& t = cur();
    if (t.kind == Token::kNum) {
      ++i_;
      return cnst(t.num);
    }
    if (t.kind == Token::kIdent) {
      ++i_;
      if (is_punct('(')) {
        ExprNode::Kind k;
        if (t.text == "sin") k = ExprNode::kSin;
        else if (t.text == "cos") k = ExprNode::kCos;
        else if (t.text == "exp") k = ExprNode::kExp;
        else throw UnknownIdentifier(t.pos, t.text);
        ++i_;
        P arg = parse_expr();
        if (!is_punct(')')) throw SyntaxError(cur().pos, "expected ')'");
        ++i_;
        return call(k, std::move(arg));
      }
      if (t.text == "sin" || t.text == "cos" || t.text == "exp")
        throw SyntaxError(cur().pos, "expected '(' after function name");
      if (t.text == "x") return variable(Var::x);
      if (t.text == "x1") return variable(Var::x1);
      if (t.text == "x2") return variable(Var::x2);
      if (t.text == "y") return variable(Var::y);
      if (t.text == "t") return variable(Var::t);
      throw UnknownIdentifier(t.pos, t.text);
    }
    if (t.kind == Token::kPunct && t.punct == '(') {
      ++i_;
      P e = parse_expr();
      if (!is_punct(')')) throw SyntaxError(cur().pos, "expected ')'");
      ++i_;
      return e;
    }
    if (t.kind == Token::kEnd) throw SyntaxError(t.pos, "unexpected end of input");
    throw SyntaxError(t.pos, "unexpected token");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

double Expression::eval(const Vars& at) const {
  if (!root_) return 0.0;
  return eval_node(*root_, at);
}

Expression Expression::diff(Var v) const {
  if (!root_) return Expression();
  return Expression(diff_node(root_, v));
}

bool Expression::is_constant(double* value) const {
  if (!root_) {
    if (value) *value = 0.0;
    return true;
  }
  return const_of(root_, value);
}

std::string Expression::str() const {
  if (!root_) return "0";
  return str_node(*root_);
}

Expression parse_expression(const std::string& text) {
  Parser p(tokenize(text));
  return Expression(p.run());
}

}  // namespace heavenly
