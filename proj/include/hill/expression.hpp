#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace hill {

enum class Variable { X, U };

/// Immutable expression tree in the spatial variable x and (for nonlinear
/// right-hand sides) the state variable u.
///
/// Nodes are shared between copies; every transformation returns a new tree.
/// The smart constructors fold constants and drop neutral elements, which keeps
/// the trees produced by symbolic differentiation small.
class Expression {
 public:
  enum class Op { Const, VarX, VarU, Add, Sub, Mul, Div, Neg, Sin, Cos, Pow, PosPart };

  static constexpr int kDefaultMaxDepth = 256;

  Expression();  // the constant 0
  static Expression constant(double value);
  static Expression x();
  static Expression u();

  [[nodiscard]] Op op() const;
  [[nodiscard]] double eval(double x, double u = 0.0) const;

  /// Symbolic derivative. Throws DomainError for PosPart, which has no
  /// closed-form derivative in this grammar.
  [[nodiscard]] Expression derivative(Variable v = Variable::X) const;

  /// Replaces every occurrence of x by `replacement`.
  [[nodiscard]] Expression substitute_x(const Expression& replacement) const;

  [[nodiscard]] bool depends_on(Variable v) const;
  [[nodiscard]] std::optional<double> constant_value() const;
  [[nodiscard]] int depth() const;
  [[nodiscard]] std::size_t node_count() const;

  /// Fully parenthesised text that parse() maps back to the same tree values;
  /// literals are printed with 17 significant digits.
  [[nodiscard]] std::string to_string() const;

  /// Grammar: literals, `x`, `u`, `pi`, `+ - * / ^` (integer exponents),
  /// `sin`, `cos`, `max0` (positive part) and parentheses.
  static Expression parse(std::string_view text, int max_depth = kDefaultMaxDepth);

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a);
  friend Expression sin(const Expression& a);
  friend Expression cos(const Expression& a);
  friend Expression pow(const Expression& a, int exponent);
  friend Expression pos_part(const Expression& a);

  struct Node;  // opaque

 private:
  explicit Expression(std::shared_ptr<const Node> node);
  static Expression make(Op op, Expression lhs, Expression rhs = {}, double value = 0.0, int exponent = 0);

  std::shared_ptr<const Node> node_;
};

Expression operator+(const Expression& a, double b);
Expression operator+(double a, const Expression& b);
Expression operator-(const Expression& a, double b);
Expression operator-(double a, const Expression& b);
Expression operator*(double a, const Expression& b);
Expression operator*(const Expression& a, double b);
Expression operator/(const Expression& a, double b);

}  // namespace hill
