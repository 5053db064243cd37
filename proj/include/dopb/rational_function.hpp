#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dopb/polynomial.hpp"

namespace dopb {

/// Element of Q(z), stored as num/den with gcd(num, den) = 1 and den monic.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(Polynomial num) : num_(std::move(num)), den_(1) {}  // NOLINT: polynomial embedding
  RationalFunction(const Rational& c) : num_(c), den_(1) {}            // NOLINT
  RationalFunction(int c) : num_(c), den_(1) {}                        // NOLINT
  RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return is_polynomial() && num_.is_constant(); }
  Rational constant_value() const { return num_.coeff(0); }

  /// deg(num) - deg(den); only meaningful for nonzero values.
  int degree() const { return num_.degree() - den_.degree(); }

  RationalFunction derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  /// f(z + shift).
  RationalFunction shifted(const Rational& shift) const {
    return RationalFunction(num_.shifted(shift), den_.shifted(shift));
  }

  /// f(1/z).
  RationalFunction inverted() const {
    const int n = std::max(num_.degree(), den_.degree());
    if (is_zero()) return {};
    return RationalFunction(num_.reversed(n), den_.reversed(n));
  }

  /// Order of vanishing at z = 0 (negative for a pole). Undefined for zero.
  int valuation_at_zero() const { return num_.low_degree() - den_.low_degree(); }

  /// First `count` Laurent coefficients at 0, starting from the valuation.
  std::vector<Rational> laurent_at_zero(int count) const;

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    // over lcm(den_a, den_b)
    const Polynomial g = gcd(a.den_, b.den_);
    const Polynomial ca = b.den_ / g, cb = a.den_ / g;
    return RationalFunction(a.num_ * ca + b.num_ * cb, a.den_ * ca);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator-(const RationalFunction& a) {
    RationalFunction r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_polynomial() && b.is_polynomial()) {
      RationalFunction r;
      r.num_ = a.num_ * b.num_;
      return r;
    }
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw Error(ErrorCode::division_by_zero, "rational function divided by zero");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  std::string to_string(const std::string& var = "z") const {
    if (is_polynomial()) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw Error(ErrorCode::division_by_zero, "rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    Polynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    const Rational lc = den_.leading();
    if (lc != 1) {
      num_ /= lc;
      den_ /= lc;
    }
  }

  Polynomial num_;
  Polynomial den_;
};

inline std::vector<Rational> RationalFunction::laurent_at_zero(int count) const {
  std::vector<Rational> out;
  if (is_zero() || count <= 0) return out;
  // Strip powers of z, then divide power series num'/den' with den'(0) != 0.
  const int ln = num_.low_degree(), ld = den_.low_degree();
  const auto& nc = num_.coefficients();
  const auto& dc = den_.coefficients();
  auto n_at = [&](int i) -> Rational {
    const int k = i + ln;
    return k < static_cast<int>(nc.size()) ? nc[static_cast<std::size_t>(k)] : Rational(0);
  };
  auto d_at = [&](int i) -> Rational {
    const int k = i + ld;
    return k < static_cast<int>(dc.size()) ? dc[static_cast<std::size_t>(k)] : Rational(0);
  };
  const Rational d0 = d_at(0);
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Rational acc = n_at(i);
    for (int k = 1; k <= i; ++k) {
      const Rational dk = d_at(k);
      if (dk != 0) acc -= dk * out[static_cast<std::size_t>(i - k)];
    }
    out.push_back(acc / d0);
  }
  return out;
}

}  // namespace dopb
