#pragma once

#include <string>
#include <utility>

#include "dopb/polynomial.hpp"

namespace dopb {

/// A point of the Riemann sphere, or a Galois orbit of algebraic points
/// given by the monic squarefree polynomial whose roots form it.
struct PointSpec {
  enum class Kind { rational, orbit, infinity };

  Kind kind = Kind::rational;
  Rational value;      // Kind::rational
  Polynomial orbit;    // Kind::orbit, monic, squarefree, no rational roots

  static PointSpec at(const Rational& v) { return {Kind::rational, v, {}}; }
  static PointSpec infinity() { return {Kind::infinity, 0, {}}; }
  /// Degree-1 factors are turned into rational points.
  static PointSpec roots_of(const Polynomial& p) {
    if (p.degree() < 1) throw Error(ErrorCode::invalid_input, "orbit polynomial must be nonconstant");
    Polynomial m = p.monic();
    if (m.degree() == 1) return at(-m.coeff(0));
    return {Kind::orbit, 0, std::move(m)};
  }

  bool is_finite() const { return kind != Kind::infinity; }

  /// Number of complex points represented.
  int size() const { return kind == Kind::orbit ? orbit.degree() : 1; }

  /// Monic polynomial vanishing exactly on the point(s); undefined at infinity.
  Polynomial local_polynomial() const {
    return kind == Kind::orbit ? orbit : Polynomial::linear_root(value);
  }

  std::string to_string(const std::string& var = "z") const {
    switch (kind) {
      case Kind::rational: return dopb::to_string(value);
      case Kind::infinity: return "inf";
      case Kind::orbit: return "roots(" + orbit.to_string(var) + ")";
    }
    return "";
  }

  friend bool operator==(const PointSpec& a, const PointSpec& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::rational) return a.value == b.value;
    if (a.kind == Kind::orbit) return a.orbit == b.orbit;
    return true;
  }

  /// Rational points by value, then orbits, then infinity.
  friend bool operator<(const PointSpec& a, const PointSpec& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    if (a.kind == Kind::rational) return a.value < b.value;
    if (a.kind == Kind::orbit) return lex_less(a.orbit, b.orbit);
    return false;
  }
};

}  // namespace dopb
