#pragma once

#include <utility>

#include "dopb/polynomial.hpp"

namespace dopb {

/// Residue class in Q[x]/(modulus). The modulus is monic and squarefree;
/// when it is irreducible this is arithmetic in a number field, which is how
/// a Galois orbit of singular points is handled without naming its roots.
class QuotientElement {
 public:
  QuotientElement(Polynomial modulus, Polynomial residue) : modulus_(std::move(modulus)) {
    if (modulus_.degree() < 1) throw Error(ErrorCode::invalid_input, "quotient modulus must be nonconstant");
    modulus_ = modulus_.monic();
    residue_ = residue % modulus_;
  }

  /// Class of the variable x, i.e. a generic root of the modulus.
  static QuotientElement generator(const Polynomial& modulus) { return {modulus, Polynomial::x()}; }

  const Polynomial& modulus() const { return modulus_; }
  const Polynomial& residue() const { return residue_; }
  bool is_zero() const { return residue_.is_zero(); }

  /// Image of a polynomial evaluated at the generator.
  static QuotientElement evaluate(const Polynomial& modulus, const Polynomial& p) { return {modulus, p}; }

  QuotientElement inverse() const {
    const ExtendedGcd eg = extended_gcd(residue_, modulus_);
    if (eg.g.degree() != 0) throw Error(ErrorCode::division_by_zero, "element is not invertible modulo " + modulus_.to_string("x"));
    return {modulus_, eg.s};
  }

  QuotientElement pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    QuotientElement result(modulus_, Polynomial(1)), base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  friend QuotientElement operator+(const QuotientElement& a, const QuotientElement& b) {
    return {a.modulus_, a.residue_ + b.residue_};
  }
  friend QuotientElement operator-(const QuotientElement& a, const QuotientElement& b) {
    return {a.modulus_, a.residue_ - b.residue_};
  }
  friend QuotientElement operator*(const QuotientElement& a, const QuotientElement& b) {
    return {a.modulus_, a.residue_ * b.residue_};
  }
  friend QuotientElement operator*(const QuotientElement& a, const Rational& s) { return {a.modulus_, a.residue_ * s}; }
  friend bool operator==(const QuotientElement& a, const QuotientElement& b) {
    return a.modulus_ == b.modulus_ && a.residue_ == b.residue_;
  }

 private:
  Polynomial modulus_;
  Polynomial residue_;
};

}  // namespace dopb
