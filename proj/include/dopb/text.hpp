#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "dopb/operator.hpp"

namespace dopb {

/// Operator expressions: sums, products (composition), powers with
/// nonnegative integer exponents, unary minus, parentheses, integer
/// literals, the variable and the derivation D. Division is by an
/// order-0 factor and acts on the left: A / f = (1/f) A.
class OperatorParser {
 public:
  OperatorParser(std::string_view text, std::string var) : s_(text), var_(std::move(var)) {
    if (var_ == "D" || var_.empty()) throw Error(ErrorCode::invalid_input, "variable name must be nonempty and differ from D");
  }

  DiffOperator parse() {
    DiffOperator out = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::parse_error, "position " + std::to_string(pos_ + 1) + ": " + what);
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

  DiffOperator sum() {
    DiffOperator acc = product();
    for (;;) {
      if (eat('+'))
        acc = acc + product();
      else if (eat('-'))
        acc = acc - product();
      else
        return acc;
    }
  }

  DiffOperator product() {
    DiffOperator acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = multiply(acc, unary());
      } else if (eat('/')) {
        const std::size_t at = pos_;
        const DiffOperator d = unary();
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        if (d.order() > 0) {
          pos_ = at;
          fail("division by an operator of positive order");
        }
        acc = RationalFunction(1) / d.coeff(0) * acc;
      } else {
        return acc;
      }
    }
  }

  DiffOperator unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  DiffOperator power() {
    DiffOperator base = atom();
    if (!eat('^')) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent");
    if (pos_ - start > 6) fail("exponent too large");
    const int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
    DiffOperator out = DiffOperator::scalar(RationalFunction(1), var_);
    for (int i = 0; i < e; ++i) out = multiply(out, base);
    return out;
  }

  DiffOperator atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      DiffOperator inner = sum();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const Integer n(std::string(s_.substr(start, pos_ - start)));
      return DiffOperator::scalar(RationalFunction(Rational(n)), var_);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      if (name == "D") return DiffOperator::derivation(var_);
      if (name == var_) return DiffOperator::scalar(RationalFunction(Polynomial::x()), var_);
      pos_ = start;
      fail("unknown symbol '" + std::string(name) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::string var_;
  std::size_t pos_ = 0;
};

inline DiffOperator parse_operator(std::string_view text, const std::string& var = "z") {
  DiffOperator op = OperatorParser(text, var).parse();
  op.set_var(var);
  return op;
}

/// A rational function written in the operator syntax (order 0).
inline RationalFunction parse_rational_function(std::string_view text, const std::string& var = "z") {
  const DiffOperator op = parse_operator(text, var);
  if (op.order() > 0) throw Error(ErrorCode::parse_error, "expected a function, got an operator of order " + std::to_string(op.order()));
  return op.coeff(0);
}

namespace detail {

inline bool single_term(const Polynomial& p) {
  int n = 0;
  for (const auto& c : p.coefficients()) n += c != 0;
  return n == 1;
}

}  // namespace detail

/// Inverse of parse_operator: highest derivative first, e.g. "z*D^2 + (-z + 2)*D + 3".
inline std::string format_operator(const DiffOperator& op) {
  if (op.is_zero()) return "0";
  const std::string& v = op.var();
  std::string out;
  for (int j = op.order(); j >= 0; --j) {
    const RationalFunction c = op.coeff(j);
    if (c.is_zero()) continue;
    const std::string d = j == 0 ? "" : j == 1 ? "D" : "D^" + std::to_string(j);
    std::string text;
    bool neg = false;
    if (!c.is_polynomial()) {
      text = c.to_string(v) + (d.empty() ? "" : "*" + d);
    } else if (j == 0) {
      // a flat sum: a leading "-" can move into the joining sign
      text = c.numerator().to_string(v);
      neg = text.front() == '-';
      if (neg) text.erase(0, 1);
    } else if (detail::single_term(c.numerator())) {
      const Polynomial& p = c.numerator();
      neg = p.leading() < 0;
      const Polynomial a = neg ? Polynomial(-p) : p;
      text = a == Polynomial(1) ? d : a.to_string(v) + "*" + d;
    } else {
      text = "(" + c.to_string(v) + ")*" + d;
    }
    if (out.empty())
      out = (neg ? "-" : "") + text;
    else
      out += (neg ? " - " : " + ") + text;
  }
  return out;
}

}  // namespace dopb
