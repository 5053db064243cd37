#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "dopb/error.hpp"

namespace dopb {

using Integer = mpz_class;
// mpq_class keeps numerator/denominator reduced with a positive denominator
// after every arithmetic operation.
using Rational = mpq_class;

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Rational abs_of(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Canonical text form: "p" when the denominator is 1, "p/q" otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Accepts "p", "p/q", with optional sign and surrounding blanks.
inline Rational parse_rational(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string s(text.substr(b, e - b));
  if (s.empty()) throw Error(ErrorCode::parse_error, "empty rational literal");
  auto slash = s.find('/');
  auto valid_int = [](std::string_view t) {
    std::size_t i = 0;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' )
    throw Error(ErrorCode::parse_error, "malformed rational literal '" + s + "'");
  Integer n(strip_plus(num)), d(strip_plus(den));
  if (d == 0) throw Error(ErrorCode::division_by_zero, "zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace dopb
