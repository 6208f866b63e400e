#include "expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "errors.hpp"

namespace gardner {

struct Expression::Node {
  enum class Kind { kNumber, kVariable, kNeg, kAdd, kSub, kMul, kDiv, kPow, kCall };
  Kind kind = Kind::kNumber;
  double value = 0.0;
  double (*fn)(double) = nullptr;
  std::vector<std::shared_ptr<const Node>> args;

  double eval(double x) const {
    switch (kind) {
      case Kind::kNumber:
        return value;
      case Kind::kVariable:
        return x;
      case Kind::kNeg:
        return -args[0]->eval(x);
      case Kind::kAdd:
        return args[0]->eval(x) + args[1]->eval(x);
      case Kind::kSub:
        return args[0]->eval(x) - args[1]->eval(x);
      case Kind::kMul:
        return args[0]->eval(x) * args[1]->eval(x);
      case Kind::kDiv:
        return args[0]->eval(x) / args[1]->eval(x);
      case Kind::kPow:
        return std::pow(args[0]->eval(x), args[1]->eval(x));
      case Kind::kCall:
        return fn(args[0]->eval(x));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

double sech(double v) { return 1.0 / std::cosh(v); }
double cosh_fn(double v) { return std::cosh(v); }
double sinh_fn(double v) { return std::sinh(v); }
double tanh_fn(double v) { return std::tanh(v); }
double exp_fn(double v) { return std::exp(v); }
double sqrt_fn(double v) { return std::sqrt(v); }

NodePtr make(Kind kind, std::vector<NodePtr> args = {}, double value = 0.0,
             double (*fn)(double) = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = kind;
  n->value = value;
  n->fn = fn;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  NodePtr parse() {
    auto n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("expression error at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (eat('+')) {
        lhs = make(Kind::kAdd, {lhs, term()});
      } else if (eat('-')) {
        lhs = make(Kind::kSub, {lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (eat('*')) {
        lhs = make(Kind::kMul, {lhs, unary()});
      } else if (eat('/')) {
        lhs = make(Kind::kDiv, {lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Kind::kNeg, {unary()});
    if (eat('+')) return unary();
    return power();
  }

  NodePtr power() {
    auto base = primary();
    if (eat('^')) return make(Kind::kPow, {base, unary()});
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    if (eat('(')) {
      auto n = expr();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      return make(Kind::kNumber, {}, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "x") return make(Kind::kVariable);
      if (name == "pi") return make(Kind::kNumber, {}, std::numbers::pi);
      if (name == "e") return make(Kind::kNumber, {}, std::numbers::e);
      double (*fn)(double) = nullptr;
      if (name == "cosh") fn = cosh_fn;
      if (name == "sinh") fn = sinh_fn;
      if (name == "tanh") fn = tanh_fn;
      if (name == "sech") fn = sech;
      if (name == "exp") fn = exp_fn;
      if (name == "sqrt") fn = sqrt_fn;
      if (!fn) {
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      if (!eat('(')) fail("expected '(' after " + name);
      auto arg = expr();
      if (!eat(')')) fail("expected ')'");
      return make(Kind::kCall, {arg}, 0.0, fn);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(std::string text, std::shared_ptr<const Node> root)
    : text_(std::move(text)), root_(std::move(root)) {}

Expression Expression::parse(const std::string& text) {
  Parser p(text);
  auto root = p.parse();
  return Expression(text, std::move(root));
}

double Expression::operator()(double x) const { return root_->eval(x); }

}  // namespace gardner
