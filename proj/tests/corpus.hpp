#pragma once

// Seeded generators and independent oracles shared by the property tests
// and the acceptance binary. No test framework here.

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "dopb/linear_algebra.hpp"
#include "dopb/operator.hpp"

namespace corpus {

using namespace dopb;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Rational rational(int num = 5, int den = 3) {
    Rational q(integer(-num, num), integer(1, den));
    q.canonicalize();
    return q;
  }

  Rational nonzero_rational(int num = 5, int den = 3) {
    Rational q = 0;
    while (q == 0) q = rational(num, den);
    return q;
  }

  /// Degree exactly `deg`; deg < 0 gives the zero polynomial.
  Polynomial polynomial(int deg, int num = 5, int den = 2) {
    if (deg < 0) return {};
    std::vector<Rational> c(static_cast<std::size_t>(deg) + 1);
    for (int i = 0; i < deg; ++i) c[static_cast<std::size_t>(i)] = rational(num, den);
    c.back() = nonzero_rational(num, den);
    return Polynomial(std::move(c));
  }

  Polynomial polynomial_upto(int max_deg, int num = 5, int den = 2) { return polynomial(integer(-1, max_deg), num, den); }

  RationalFunction rational_function(int num_deg, int den_deg) {
    return RationalFunction(polynomial_upto(num_deg), polynomial(integer(0, den_deg)).monic());
  }

  DiffOperator polynomial_operator(int order, int max_deg) {
    std::vector<RationalFunction> c;
    for (int j = 0; j < order; ++j) c.emplace_back(polynomial_upto(max_deg));
    c.emplace_back(polynomial(integer(0, max_deg)));
    return DiffOperator(std::move(c));
  }

  DiffOperator rational_operator(int order, int num_deg, int den_deg) {
    std::vector<RationalFunction> c;
    for (int j = 0; j < order; ++j)
      c.push_back(coin() ? rational_function(num_deg, den_deg) : RationalFunction(polynomial_upto(num_deg)));
    RationalFunction lead;
    while (lead.is_zero()) lead = rational_function(num_deg, den_deg);
    c.push_back(lead);
    return DiffOperator(std::move(c));
  }

  /// Distinct small rationals.
  std::vector<Rational> distinct_points(int count) {
    std::set<Rational> s;
    while (static_cast<int>(s.size()) < count) s.insert(rational(4, 2));
    return {s.begin(), s.end()};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline Polynomial product_of_roots(const std::vector<Rational>& roots) {
  Polynomial p(1);
  for (const auto& r : roots) p *= Polynomial::linear_root(r);
  return p;
}

/// Monic Fuchsian operator of order 1 or 2 with rational singular points;
/// numerators and denominators of the coefficients have degree <= 3.
///   order 1: D + A1/A,                 deg A <= 3, deg A1 < deg A
///   order 2: D^2 + A1/A D + A2/(A G),  deg A <= 2, G | A, deg A2 <= deg(AG) - 2
inline DiffOperator fuchsian_factor(Gen& g, int order) {
  if (order == 1) {
    const Polynomial A = product_of_roots(g.distinct_points(g.integer(1, 3)));
    return DiffOperator({RationalFunction(g.polynomial_upto(A.degree() - 1), A), RationalFunction(1)});
  }
  const std::vector<Rational> roots = g.distinct_points(g.integer(1, 2));
  const Polynomial A = product_of_roots(roots);
  const Polynomial G = g.coin() ? Polynomial::linear_root(roots.front()) : Polynomial(1);
  const Polynomial AG = A * G;
  return DiffOperator({RationalFunction(g.polynomial_upto(AG.degree() - 2), AG), RationalFunction(g.polynomial_upto(A.degree() - 1), A),
                       RationalFunction(1)});
}

/// Residue of P/Q at a rational root r of Q.
inline Rational residue(const Polynomial& P, const Polynomial& Q, const Rational& r) {
  const Polynomial lin = Polynomial::linear_root(r);
  const int e = multiplicity(lin, Q);
  const Polynomial R = Q / pow(lin, e);
  // (1/(e-1)!) d^(e-1)/dz^(e-1) [P/R] at r
  RationalFunction f(P, R);
  Rational fact = 1;
  for (int i = 1; i < e; ++i) {
    f = f.derivative();
    fact *= i;
  }
  return f.numerator()(r) / f.denominator()(r) / fact;
}

/// D + P/Q with a double pole or a polynomial part, so the operator is
/// irregular somewhere. The generalized exponents of this order-1 operator
/// are minus the residues of P/Q at its poles and their sum at infinity;
/// `exponent_bound` is the largest modulus among them.
struct IrregularFactor {
  DiffOperator op;
  Rational exponent_bound;
};

inline IrregularFactor irregular_factor(Gen& g) {
  for (;;) {
    const std::vector<Rational> roots = g.distinct_points(g.integer(1, 2));
    Polynomial Q(1);
    for (std::size_t i = 0; i < roots.size(); ++i) Q *= pow(Polynomial::linear_root(roots[i]), i == 0 && g.coin() ? 2 : 1);
    if (Q.degree() > 3) continue;
    const Polynomial P = g.polynomial(g.integer(0, 3));
    const RationalFunction a(P, Q);
    if (a.is_polynomial()) continue;
    // irregular: a pole of order >= 2, or a(z) not vanishing at infinity
    const Polynomial den = a.denominator();
    bool irregular = a.numerator().degree() >= den.degree();
    for (const auto& r : roots) irregular = irregular || multiplicity(Polynomial::linear_root(r), den) >= 2;
    if (!irregular) continue;
    Rational bound = 0, total = 0;
    for (const auto& r : roots) {
      if (multiplicity(Polynomial::linear_root(r), den) == 0) continue;
      const Rational res = residue(a.numerator(), den, r);
      total += res;
      bound = std::max<Rational>(bound, abs_of(res));
    }
    bound = std::max<Rational>(bound, abs_of(total));
    return {DiffOperator({a, RationalFunction(1)}), bound};
  }
}

struct Factorization {
  DiffOperator N, M, L;
  std::optional<Rational> E_override;  // set for irregular cases
};

/// Fuchsian cases: N, M Fuchsian, E from the census of L. Irregular
/// cases: M of order 1 from irregular_factor, N a random polynomial
/// operator, E the exponent bound of M.
inline Factorization factorization(Gen& g, bool irregular) {
  Factorization f;
  if (!irregular) {
    f.M = fuchsian_factor(g, g.integer(1, 2));
    f.N = fuchsian_factor(g, g.integer(1, 2));
    if (g.coin()) f.N = RationalFunction(g.nonzero_rational()) * f.N;
  } else {
    const IrregularFactor m = irregular_factor(g);
    f.M = m.op;
    f.E_override = m.exponent_bound;
    f.N = g.polynomial_operator(g.integer(1, 2), 2);
  }
  f.L = multiply(f.N, f.M);
  return f;
}

}  // namespace corpus
