#pragma once

#include <memory>
#include <string>

namespace gardner {

/// Compiled arithmetic expression in one variable x.
///
/// Grammar: + - * / ^ (right associative), unary minus, parentheses, numbers,
/// the constants pi and e, and the functions cosh sinh tanh sech exp sqrt.
class Expression {
 public:
  /// Throws DomainError with the offending position on malformed input.
  static Expression parse(const std::string& text);

  double operator()(double x) const;
  const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  Expression(std::string text, std::shared_ptr<const Node> root);

  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace gardner
