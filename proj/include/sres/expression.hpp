#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sres {

struct ExprNode;

/// Real expression in x1..xn: numbers, pi, + - * / ^, unary minus,
/// parentheses and sin, cos, exp, sqrt, log. Gradients are exact (forward
/// mode on the parse tree).
class Expression {
 public:
  /// Throws InputError on syntax errors or variables beyond x_n.
  Expression(const std::string& source, int n);

  static Expression constant(double value, int n);

  double value(std::span<const double> x) const;
  /// Value and gradient in one pass; grad must have size n.
  double value_and_gradient(std::span<const double> x, std::span<double> grad) const;

  /// True when no variable occurs.
  bool is_constant() const;
  const std::string& source() const { return source_; }
  int dimension() const { return n_; }

 private:
  std::string source_;
  int n_;
  std::shared_ptr<const ExprNode> root_;
};

}  // namespace sres
