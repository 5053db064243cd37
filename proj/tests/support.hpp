#pragma once

#include <string>
#include <vector>

#include "corpus.hpp"
#include "dopb/text.hpp"

namespace testing {

using namespace dopb;

inline DiffOperator op(const std::string& text) { return parse_operator(text); }
inline RationalFunction fn(const std::string& text) { return parse_rational_function(text); }
inline Polynomial poly(const std::string& text) {
  const RationalFunction f = fn(text);
  REQUIRE(f.is_polynomial());
  return f.numerator();
}

using corpus::Gen;

/// Resultant as the determinant of the Sylvester matrix.
inline Rational sylvester_resultant(const Polynomial& f, const Polynomial& g) {
  const int m = f.degree(), n = g.degree();
  const std::size_t size = static_cast<std::size_t>(m + n);
  if (size == 0) return 1;
  Matrix s(size, std::vector<Rational>(size));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] = f.coeff(m - i);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + i)] = g.coeff(n - i);
  return determinant(s);
}

/// Exact action of an operator on a function, via repeated differentiation.
inline RationalFunction act(const DiffOperator& L, const RationalFunction& f) {
  RationalFunction acc, d = f;
  for (int j = 0; j <= L.order(); ++j) {
    acc += L.coeff(j) * d;
    d = d.derivative();
  }
  return acc;
}

}  // namespace testing
