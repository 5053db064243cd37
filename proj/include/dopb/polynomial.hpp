#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "dopb/error.hpp"
#include "dopb/rational.hpp"

namespace dopb {

/// Dense univariate polynomial over Q, coefficients in ascending degree.
/// The coefficient vector never carries trailing zeros; the zero
/// polynomial is the empty vector and has degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
  Polynomial(const Rational& constant) {  // NOLINT: implicit scalar embedding
    if (constant != 0) c_.push_back(constant);
  }
  Polynomial(int constant) : Polynomial(Rational(constant)) {}  // NOLINT

  static Polynomial monomial(const Rational& coeff, int degree) {
    if (coeff == 0) return {};
    std::vector<Rational> c(static_cast<std::size_t>(degree) + 1);
    c.back() = coeff;
    return Polynomial(std::move(c));
  }
  static Polynomial x() { return monomial(1, 1); }
  /// The linear polynomial x - root.
  static Polynomial linear_root(const Rational& root) { return Polynomial({Rational(-root), Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coefficients() const { return c_; }

  Rational coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(i)];
  }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  Rational trailing_constant() const { return coeff(0); }

  /// Multiplicity of x as a factor; -1 for the zero polynomial.
  int low_degree() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return static_cast<int>(i);
    return -1;
  }

  Rational operator()(const Rational& at) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    return *this / leading();
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return Polynomial(std::move(d));
  }

  /// p(q(x)).
  Polynomial compose(const Polynomial& q) const {
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + Polynomial(*it);
    return acc;
  }

  /// p(x + shift).
  Polynomial shifted(const Rational& shift) const { return compose(Polynomial({shift, Rational(1)})); }

  /// x^n p(1/x) for n >= degree.
  Polynomial reversed(int n) const {
    std::vector<Rational> r(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= degree(); ++i) r[static_cast<std::size_t>(n - i)] = c_[static_cast<std::size_t>(i)];
    return Polynomial(std::move(r));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      c_.clear();
      return *this;
    }
    for (auto& a : c_) a *= s;
    return *this;
  }
  Polynomial& operator/=(const Rational& s) {
    if (s == 0) throw Error(ErrorCode::division_by_zero, "polynomial divided by zero scalar");
    for (auto& a : c_) a /= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator/(Polynomial a, const Rational& s) { return a /= s; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Total order used only to sort points deterministically.
  friend bool lex_less(const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
      if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    }
    return false;
  }

  std::string to_string(const std::string& var = "z") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

inline Polynomial pow(const Polynomial& p, int e) {
  Polynomial result(1), base = p;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

struct PolyDivision {
  Polynomial quotient;
  Polynomial remainder;
};

inline PolyDivision divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::division_by_zero, "polynomial division by zero");
  std::vector<Rational> r = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db) + 1);
  const Rational lb = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    const Rational t = r[static_cast<std::size_t>(i)] / lb;
    if (t == 0) continue;
    q[static_cast<std::size_t>(i - db)] = t;
    for (int k = 0; k <= db; ++k) r[static_cast<std::size_t>(i - db + k)] -= t * b.coeff(k);
  }
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

inline Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).quotient; }
inline Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).remainder; }

inline bool divides(const Polynomial& d, const Polynomial& p) { return (p % d).is_zero(); }

/// Monic gcd; gcd(0, 0) = 0.
inline Polynomial gcd(Polynomial a, Polynomial b) {
  // monic remainders keep the rational coefficients small
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    Polynomial r = (a % b).monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return (a * b / gcd(a, b)).monic();
}

struct ExtendedGcd {
  Polynomial g;  // monic
  Polynomial s;
  Polynomial t;  // s*a + t*b = g
};

inline ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial r0 = a, r1 = b, s0(1), s1, t0, t1(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Polynomial s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Polynomial t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {};
  const Rational lc = r0.leading();
  return {r0 / lc, s0 / lc, t0 / lc};
}

/// Number of times `factor` (nonconstant) divides p; p must be nonzero.
inline int multiplicity(const Polynomial& factor, Polynomial p) {
  int m = 0;
  while (true) {
    auto [q, r] = divmod(p, factor);
    if (!r.is_zero()) return m;
    p = std::move(q);
    ++m;
  }
}

/// Integer coefficient vector of c*p with c > 0 chosen so that the
/// coefficients are coprime integers.
inline std::vector<Integer> primitive_integer_coefficients(const Polynomial& p) {
  Integer den_lcm = 1;
  for (const auto& a : p.coefficients()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), a.get_den_mpz_t());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& a : p.coefficients()) {
    Integer v = a.get_num() * (den_lcm / a.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    out.push_back(v);
  }
  if (g != 0)
    for (auto& v : out) v /= g;
  return out;
}

inline std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    Rational a = c_[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    const bool neg = a < 0;
    if (neg) a = -a;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mono;
    if (i >= 1) mono = var + (i > 1 ? "^" + std::to_string(i) : "");
    if (i == 0) {
      out += dopb::to_string(a);
    } else if (a == 1) {
      out += mono;
    } else {
      out += dopb::to_string(a) + "*" + mono;
    }
  }
  return out;
}

}  // namespace dopb
