#include "hill/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "hill/errors.hpp"

namespace hill {

struct Expression::Node {
  Op op = Op::Const;
  double value = 0.0;
  int exponent = 0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
  int depth = 1;
  std::size_t count = 1;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

bool is_binary(Expression::Op op) {
  using Op = Expression::Op;
  return op == Op::Add || op == Op::Sub || op == Op::Mul || op == Op::Div;
}

double eval_node(const Expression::Node& n, double x, double u) {
  using Op = Expression::Op;
  switch (n.op) {
    case Op::Const:
      return n.value;
    case Op::VarX:
      return x;
    case Op::VarU:
      return u;
    case Op::Add:
      return eval_node(*n.lhs, x, u) + eval_node(*n.rhs, x, u);
    case Op::Sub:
      return eval_node(*n.lhs, x, u) - eval_node(*n.rhs, x, u);
    case Op::Mul:
      return eval_node(*n.lhs, x, u) * eval_node(*n.rhs, x, u);
    case Op::Div:
      return eval_node(*n.lhs, x, u) / eval_node(*n.rhs, x, u);
    case Op::Neg:
      return -eval_node(*n.lhs, x, u);
    case Op::Sin:
      return std::sin(eval_node(*n.lhs, x, u));
    case Op::Cos:
      return std::cos(eval_node(*n.lhs, x, u));
    case Op::Pow: {
      const double base = eval_node(*n.lhs, x, u);
      if (n.exponent == 2) return base * base;
      if (n.exponent == 3) return base * base * base;
      return std::pow(base, n.exponent);
    }
    case Op::PosPart:
      return std::max(eval_node(*n.lhs, x, u), 0.0);
  }
  return 0.0;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (v < 0.0) return "(" + s + ")";
  return s;
}

}  // namespace

Expression::Expression() : Expression(constant(0.0)) {}

Expression::Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expression Expression::constant(double value) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = value;
  return Expression(std::move(n));
}

Expression Expression::x() {
  auto n = std::make_shared<Node>();
  n->op = Op::VarX;
  return Expression(std::move(n));
}

Expression Expression::u() {
  auto n = std::make_shared<Node>();
  n->op = Op::VarU;
  return Expression(std::move(n));
}

Expression Expression::make(Op op, Expression lhs, Expression rhs, double value, int exponent) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->value = value;
  n->exponent = exponent;
  n->lhs = lhs.node_;
  n->depth = 1 + lhs.node_->depth;
  n->count = 1 + lhs.node_->count;
  if (is_binary(op)) {
    n->rhs = rhs.node_;
    n->depth = 1 + std::max(lhs.node_->depth, rhs.node_->depth);
    n->count += rhs.node_->count;
  }
  return Expression(std::move(n));
}

Expression::Op Expression::op() const { return node_->op; }

double Expression::eval(double x, double u) const { return eval_node(*node_, x, u); }

std::optional<double> Expression::constant_value() const {
  if (node_->op == Op::Const) return node_->value;
  return std::nullopt;
}

int Expression::depth() const { return node_->depth; }

std::size_t Expression::node_count() const { return node_->count; }

bool Expression::depends_on(Variable v) const {
  const Op target = v == Variable::X ? Op::VarX : Op::VarU;
  if (node_->op == target) return true;
  if (node_->lhs && Expression(node_->lhs).depends_on(v)) return true;
  if (node_->rhs && Expression(node_->rhs).depends_on(v)) return true;
  return false;
}

Expression operator+(const Expression& a, const Expression& b) {
  const auto ca = a.constant_value();
  const auto cb = b.constant_value();
  if (ca && cb) return Expression::constant(*ca + *cb);
  if (ca && *ca == 0.0) return b;
  if (cb && *cb == 0.0) return a;
  return Expression::make(Expression::Op::Add, a, b);
}

Expression operator-(const Expression& a, const Expression& b) {
  const auto ca = a.constant_value();
  const auto cb = b.constant_value();
  if (ca && cb) return Expression::constant(*ca - *cb);
  if (cb && *cb == 0.0) return a;
  if (ca && *ca == 0.0) return -b;
  return Expression::make(Expression::Op::Sub, a, b);
}

Expression operator*(const Expression& a, const Expression& b) {
  const auto ca = a.constant_value();
  const auto cb = b.constant_value();
  if (ca && cb) return Expression::constant(*ca * *cb);
  if ((ca && *ca == 0.0) || (cb && *cb == 0.0)) return Expression::constant(0.0);
  if (ca && *ca == 1.0) return b;
  if (cb && *cb == 1.0) return a;
  if (ca && *ca == -1.0) return -b;
  if (cb && *cb == -1.0) return -a;
  return Expression::make(Expression::Op::Mul, a, b);
}

Expression operator/(const Expression& a, const Expression& b) {
  const auto ca = a.constant_value();
  const auto cb = b.constant_value();
  if (ca && cb) return Expression::constant(*ca / *cb);
  if (ca && *ca == 0.0) return Expression::constant(0.0);
  if (cb && *cb == 1.0) return a;
  return Expression::make(Expression::Op::Div, a, b);
}

Expression operator-(const Expression& a) {
  if (const auto c = a.constant_value()) return Expression::constant(-*c);
  if (a.op() == Expression::Op::Neg) return Expression(a.node_->lhs);
  return Expression::make(Expression::Op::Neg, a);
}

Expression sin(const Expression& a) {
  if (const auto c = a.constant_value()) return Expression::constant(std::sin(*c));
  return Expression::make(Expression::Op::Sin, a);
}

Expression cos(const Expression& a) {
  if (const auto c = a.constant_value()) return Expression::constant(std::cos(*c));
  return Expression::make(Expression::Op::Cos, a);
}

Expression pow(const Expression& a, int exponent) {
  if (exponent == 0) return Expression::constant(1.0);
  if (exponent == 1) return a;
  if (const auto c = a.constant_value()) return Expression::constant(std::pow(*c, exponent));
  return Expression::make(Expression::Op::Pow, a, {}, 0.0, exponent);
}

Expression pos_part(const Expression& a) {
  if (const auto c = a.constant_value()) return Expression::constant(std::max(*c, 0.0));
  return Expression::make(Expression::Op::PosPart, a);
}

Expression operator+(const Expression& a, double b) { return a + Expression::constant(b); }
Expression operator+(double a, const Expression& b) { return Expression::constant(a) + b; }
Expression operator-(const Expression& a, double b) { return a - Expression::constant(b); }
Expression operator-(double a, const Expression& b) { return Expression::constant(a) - b; }
Expression operator*(double a, const Expression& b) { return Expression::constant(a) * b; }
Expression operator*(const Expression& a, double b) { return a * Expression::constant(b); }
Expression operator/(const Expression& a, double b) { return a / Expression::constant(b); }

Expression Expression::derivative(Variable v) const {
  const Node& n = *node_;
  const auto lhs = [&] { return Expression(n.lhs); };
  const auto rhs = [&] { return Expression(n.rhs); };
  switch (n.op) {
    case Op::Const:
      return constant(0.0);
    case Op::VarX:
      return constant(v == Variable::X ? 1.0 : 0.0);
    case Op::VarU:
      return constant(v == Variable::U ? 1.0 : 0.0);
    case Op::Add:
      return lhs().derivative(v) + rhs().derivative(v);
    case Op::Sub:
      return lhs().derivative(v) - rhs().derivative(v);
    case Op::Mul:
      return lhs().derivative(v) * rhs() + lhs() * rhs().derivative(v);
    case Op::Div: {
      const Expression num = lhs().derivative(v) * rhs() - lhs() * rhs().derivative(v);
      return num / pow(rhs(), 2);
    }
    case Op::Neg:
      return -lhs().derivative(v);
    case Op::Sin:
      return cos(lhs()) * lhs().derivative(v);
    case Op::Cos:
      return -(sin(lhs()) * lhs().derivative(v));
    case Op::Pow:
      return static_cast<double>(n.exponent) * pow(lhs(), n.exponent - 1) * lhs().derivative(v);
    case Op::PosPart:
      throw DomainError("positive part has no symbolic derivative");
  }
  return constant(0.0);
}

Expression Expression::substitute_x(const Expression& replacement) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Const:
    case Op::VarU:
      return *this;
    case Op::VarX:
      return replacement;
    case Op::Add:
      return Expression(n.lhs).substitute_x(replacement) + Expression(n.rhs).substitute_x(replacement);
    case Op::Sub:
      return Expression(n.lhs).substitute_x(replacement) - Expression(n.rhs).substitute_x(replacement);
    case Op::Mul:
      return Expression(n.lhs).substitute_x(replacement) * Expression(n.rhs).substitute_x(replacement);
    case Op::Div:
      return Expression(n.lhs).substitute_x(replacement) / Expression(n.rhs).substitute_x(replacement);
    case Op::Neg:
      return -Expression(n.lhs).substitute_x(replacement);
    case Op::Sin:
      return sin(Expression(n.lhs).substitute_x(replacement));
    case Op::Cos:
      return cos(Expression(n.lhs).substitute_x(replacement));
    case Op::Pow:
      return pow(Expression(n.lhs).substitute_x(replacement), n.exponent);
    case Op::PosPart:
      return pos_part(Expression(n.lhs).substitute_x(replacement));
  }
  return *this;
}

std::string Expression::to_string() const {
  const Node& n = *node_;
  const auto sub = [](const NodePtr& p) { return Expression(p).to_string(); };
  switch (n.op) {
    case Op::Const:
      return format_number(n.value);
    case Op::VarX:
      return "x";
    case Op::VarU:
      return "u";
    case Op::Add:
      return "(" + sub(n.lhs) + " + " + sub(n.rhs) + ")";
    case Op::Sub:
      return "(" + sub(n.lhs) + " - " + sub(n.rhs) + ")";
    case Op::Mul:
      return "(" + sub(n.lhs) + " * " + sub(n.rhs) + ")";
    case Op::Div:
      return "(" + sub(n.lhs) + " / " + sub(n.rhs) + ")";
    case Op::Neg:
      return "(-" + sub(n.lhs) + ")";
    case Op::Sin:
      return "sin(" + sub(n.lhs) + ")";
    case Op::Cos:
      return "cos(" + sub(n.lhs) + ")";
    case Op::Pow:
      return "(" + sub(n.lhs) + " ^ " + (n.exponent < 0 ? "(" + std::to_string(n.exponent) + ")" : std::to_string(n.exponent)) + ")";
    case Op::PosPart:
      return "max0(" + sub(n.lhs) + ")";
  }
  return {};
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, int max_depth) : text_(text), max_depth_(max_depth) {}

  Expression parse() {
    Expression e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    if (e.depth() > max_depth_) fail("expression tree deeper than the configured limit");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void enter() {
    if (++level_ > max_depth_) fail("expression nested deeper than the configured limit");
  }

  Expression expr() {
    enter();
    Expression lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + term();
      } else if (accept('-')) {
        lhs = lhs - term();
      } else {
        break;
      }
    }
    --level_;
    return lhs;
  }

  Expression term() {
    Expression lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * unary();
      } else if (accept('/')) {
        lhs = lhs / unary();
      } else {
        break;
      }
    }
    return lhs;
  }

  Expression unary() {
    enter();
    Expression result;
    if (accept('-')) {
      result = -unary();
    } else if (accept('+')) {
      result = unary();
    } else {
      result = power();
    }
    --level_;
    return result;
  }

  Expression power() {
    Expression base = primary();
    if (accept('^')) {
      const Expression e = unary();
      const auto c = e.constant_value();
      if (!c || std::floor(*c) != *c || std::abs(*c) > 1024) fail("exponent must be an integer constant");
      return pow(base, static_cast<int>(*c));
    }
    return base;
  }

  Expression primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string_view ident = text_.substr(start, pos_ - start);
      if (ident == "x") return Expression::x();
      if (ident == "u") return Expression::u();
      if (ident == "pi") return Expression::constant(std::numbers::pi);
      if (ident == "sin" || ident == "cos" || ident == "max0") {
        if (!accept('(')) fail("expected '(' after function name");
        Expression arg = expr();
        if (!accept(')')) fail("expected ')'");
        if (ident == "sin") return sin(arg);
        if (ident == "cos") return cos(arg);
        return pos_part(arg);
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(ident) + "'");
    }
    if (accept('(')) {
      Expression inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Expression number() {
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return Expression::constant(v);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int level_ = 0;
  int max_depth_;
};

}  // namespace

Expression Expression::parse(std::string_view text, int max_depth) { return Parser(text, max_depth).parse(); }

}  // namespace hill
