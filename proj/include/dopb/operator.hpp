#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "dopb/rational_function.hpp"

namespace dopb {

/// Linear differential operator sum_j c_j(z) D^j in Q(z)[D], D = d/dz.
///
/// The D-form with reduced rational-function coefficients is the canonical
/// storage; polynomial and monic forms are derived on demand. The zero
/// operator has no coefficients and order -1.
class DiffOperator {
 public:
  DiffOperator() = default;
  explicit DiffOperator(std::vector<RationalFunction> coeffs, std::string var = "z")
      : c_(std::move(coeffs)), var_(std::move(var)) {
    trim();
  }

  static DiffOperator derivation(std::string var = "z") { return DiffOperator({RationalFunction(), RationalFunction(1)}, std::move(var)); }
  static DiffOperator scalar(const RationalFunction& f, std::string var = "z") { return DiffOperator({f}, std::move(var)); }
  /// c * D^j
  static DiffOperator term(const RationalFunction& c, int j, std::string var = "z") {
    std::vector<RationalFunction> v(static_cast<std::size_t>(j) + 1);
    v.back() = c;
    return DiffOperator(std::move(v), std::move(var));
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::string& var() const { return var_; }
  void set_var(std::string v) { var_ = std::move(v); }

  const std::vector<RationalFunction>& coefficients() const { return c_; }
  RationalFunction coeff(int j) const {
    if (j < 0 || j > order()) return {};
    return c_[static_cast<std::size_t>(j)];
  }
  const RationalFunction& leading() const { return c_.back(); }

  /// The image of f under the operator.
  RationalFunction apply(const RationalFunction& f) const {
    RationalFunction acc, d = f;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (!c_[j].is_zero()) acc += c_[j] * d;
      if (j + 1 < c_.size()) d = d.derivative();
    }
    return acc;
  }

  friend DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
    std::vector<RationalFunction> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return DiffOperator(std::move(r), a.var_);
  }
  friend DiffOperator operator-(const DiffOperator& a) {
    std::vector<RationalFunction> r = a.c_;
    for (auto& x : r) x = -x;
    return DiffOperator(std::move(r), a.var_);
  }
  friend DiffOperator operator-(const DiffOperator& a, const DiffOperator& b) { return a + (-b); }
  /// Left multiplication by a function: f * L.
  friend DiffOperator operator*(const RationalFunction& f, const DiffOperator& a) {
    std::vector<RationalFunction> r = a.c_;
    for (auto& x : r) x = f * x;
    return DiffOperator(std::move(r), a.var_);
  }
  friend DiffOperator operator*(const DiffOperator& a, const DiffOperator& b);

  friend bool operator==(const DiffOperator& a, const DiffOperator& b) { return a.c_ == b.c_; }
  friend bool operator!=(const DiffOperator& a, const DiffOperator& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<RationalFunction> c_;
  std::string var_ = "z";
};

namespace detail {

inline Rational binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

}  // namespace detail

/// Composition n o m, using D^i f = sum_k C(i,k) f^(k) D^(i-k).
inline DiffOperator multiply(const DiffOperator& n, const DiffOperator& m) {
  if (n.is_zero() || m.is_zero()) return DiffOperator({}, n.var());
  const int on = n.order(), om = m.order();
  std::vector<RationalFunction> out(static_cast<std::size_t>(on + om) + 1);
  for (int j = 0; j <= om; ++j) {
    RationalFunction bj = m.coeff(j);
    if (bj.is_zero()) continue;
    // derivs[k] = b_j^(k)
    std::vector<RationalFunction> derivs{bj};
    for (int k = 1; k <= on; ++k) derivs.push_back(derivs.back().derivative());
    for (int i = 0; i <= on; ++i) {
      const RationalFunction ai = n.coeff(i);
      if (ai.is_zero()) continue;
      for (int k = 0; k <= i; ++k) {
        if (derivs[static_cast<std::size_t>(k)].is_zero()) continue;
        out[static_cast<std::size_t>(i - k + j)] +=
            RationalFunction(detail::binomial(i, k)) * ai * derivs[static_cast<std::size_t>(k)];
      }
    }
  }
  return DiffOperator(std::move(out), n.var());
}

inline DiffOperator operator*(const DiffOperator& a, const DiffOperator& b) { return multiply(a, b); }

inline DiffOperator normalize_monic(const DiffOperator& op) {
  if (op.is_zero()) throw Error(ErrorCode::invalid_input, "cannot normalize the zero operator");
  const RationalFunction inv = RationalFunction(1) / op.leading();
  return inv * op;
}

struct OperatorDivision {
  DiffOperator quotient;
  DiffOperator remainder;
};

/// l = quotient * m + remainder with order(remainder) < order(m).
inline OperatorDivision right_divmod(const DiffOperator& l, const DiffOperator& m) {
  if (m.is_zero()) throw Error(ErrorCode::division_by_zero, "right division by the zero operator");
  DiffOperator q({}, l.var()), r = l;
  const RationalFunction inv_lead = RationalFunction(1) / m.leading();
  while (!r.is_zero() && r.order() >= m.order()) {
    const DiffOperator t = DiffOperator::term(r.leading() * inv_lead, r.order() - m.order(), l.var());
    const int before = r.order();
    r = r - t * m;
    q = q + t;
    if (!r.is_zero() && r.order() >= before) throw Error(ErrorCode::inconsistency, "right division failed to reduce order");
  }
  return {q, r};
}

/// Formal adjoint sum_j (-D)^j o c_j.
inline DiffOperator adjoint(const DiffOperator& op) {
  if (op.is_zero()) return op;
  std::vector<RationalFunction> out(op.coefficients().size());
  for (int j = 0; j <= op.order(); ++j) {
    const RationalFunction a = op.coeff(j);
    if (a.is_zero()) continue;
    // (-1)^j D^j a = (-1)^j sum_k C(j,k) a^(j-k) D^k
    std::vector<RationalFunction> derivs{a};
    for (int k = 1; k <= j; ++k) derivs.push_back(derivs.back().derivative());
    const Rational sign = (j % 2 == 0) ? 1 : -1;
    for (int k = 0; k <= j; ++k) {
      const RationalFunction& d = derivs[static_cast<std::size_t>(j - k)];
      if (d.is_zero()) continue;
      out[static_cast<std::size_t>(k)] += RationalFunction(sign * detail::binomial(j, k)) * d;
    }
  }
  return DiffOperator(std::move(out), op.var());
}

/// Substitutes z -> z + rho, moving the point rho to the origin.
inline DiffOperator shift_point(const DiffOperator& op, const Rational& rho) {
  std::vector<RationalFunction> out;
  out.reserve(op.coefficients().size());
  for (const auto& c : op.coefficients()) out.push_back(c.shifted(rho));
  return DiffOperator(std::move(out), op.var());
}

/// Image under z -> 1/z, where D maps to -z^2 D.
inline DiffOperator invert_variable(const DiffOperator& op) {
  if (op.is_zero()) return op;
  const DiffOperator step = DiffOperator::term(RationalFunction(Polynomial::monomial(-1, 2)), 1, op.var());
  DiffOperator power = DiffOperator::scalar(1, op.var()), acc({}, op.var());
  for (int j = 0; j <= op.order(); ++j) {
    if (j > 0) power = multiply(power, step);
    const RationalFunction c = op.coeff(j);
    if (!c.is_zero()) acc = acc + c.inverted() * power;
  }
  return acc;
}

/// Coefficients U_j / V of the monic form with V monic of least degree.
struct MonicForm {
  std::vector<Polynomial> numerators;  // U_0..U_mu, U_mu = V
  Polynomial denominator;              // V
};

inline MonicForm monic_form(const DiffOperator& op) {
  const DiffOperator monic = normalize_monic(op);
  Polynomial v(1);
  for (const auto& c : monic.coefficients()) v = lcm(v, c.denominator());
  MonicForm out;
  out.denominator = v;
  for (const auto& c : monic.coefficients()) out.numerators.push_back(c.numerator() * (v / c.denominator()));
  return out;
}

/// Polynomial coefficients p_j with gcd 1 and integer-primitive content,
/// positive leading coefficient of p_m.
struct PolynomialForm {
  std::vector<Polynomial> coeffs;
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  /// max deg p_j
  int degree() const {
    int d = 0;
    for (const auto& p : coeffs) d = std::max(d, p.degree());
    return d;
  }
};

inline PolynomialForm polynomial_form(const DiffOperator& op) {
  if (op.is_zero()) throw Error(ErrorCode::invalid_input, "polynomial form of the zero operator");
  const MonicForm mf = monic_form(op);
  Polynomial g;
  for (const auto& u : mf.numerators) g = gcd(g, u);
  PolynomialForm out;
  Integer den_lcm = 1, num_gcd = 0;
  for (const auto& u : mf.numerators) {
    Polynomial p = u / g;
    for (const auto& a : p.coefficients()) {
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), a.get_den_mpz_t());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), a.get_num_mpz_t());
    }
    out.coeffs.push_back(std::move(p));
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (out.coeffs.back().leading() < 0) scale = -scale;
  for (auto& p : out.coeffs) p *= scale;
  return out;
}

inline DiffOperator from_polynomial_form(const std::vector<Polynomial>& coeffs, std::string var = "z") {
  std::vector<RationalFunction> c;
  for (const auto& p : coeffs) c.emplace_back(p);
  return DiffOperator(std::move(c), std::move(var));
}

struct DegreeProfile {
  int order = 0;
  int degree_z = 0;            // max(deg U_0..U_{mu-1}, deg V)
  int denominator_degree = 0;  // deg V
};

inline DegreeProfile degree_profile(const DiffOperator& op) {
  const MonicForm mf = monic_form(op);
  DegreeProfile out;
  out.order = op.order();
  out.denominator_degree = mf.denominator.degree();
  out.degree_z = out.denominator_degree;
  for (int j = 0; j < op.order(); ++j) out.degree_z = std::max(out.degree_z, mf.numerators[static_cast<std::size_t>(j)].degree());
  return out;
}

}  // namespace dopb
