#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "dopb/polynomial.hpp"

namespace dopb {

struct FactorPower {
  Polynomial factor;  // monic, squarefree
  int multiplicity;
};

/// Yun's algorithm. The factors are pairwise coprime and monic, and
/// prod factor^multiplicity == p / leading(p).
inline std::vector<FactorPower> squarefree_factorization(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::invalid_input, "squarefree factorization of the zero polynomial");
  std::vector<FactorPower> out;
  const Polynomial f = p.monic();
  if (f.degree() == 0) return out;
  const Polynomial fp = f.derivative();
  const Polynomial a0 = gcd(f, fp);
  Polynomial b = f / a0;
  Polynomial c = fp / a0;
  Polynomial d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    Polynomial a = gcd(b, d);
    b = b / a;
    c = d / a;
    d = c - b.derivative();
    if (a.degree() > 0) out.push_back({a.monic(), i});
  }
  return out;
}

inline Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::invalid_input, "squarefree part of the zero polynomial");
  return (p / gcd(p, p.derivative())).monic();
}

/// 1 + max_{i<n} |a_i / a_n|; every complex root lies strictly inside.
inline Rational cauchy_root_bound(const Polynomial& p) {
  if (p.degree() < 1) throw Error(ErrorCode::invalid_input, "root bound of a constant polynomial");
  Rational m = 0;
  const Rational lc = p.leading();
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, abs_of(p.coeff(i) / lc));
  return m + 1;
}

namespace detail {

inline std::vector<Polynomial> sturm_sequence(const Polynomial& f) {
  std::vector<Polynomial> seq{f, f.derivative()};
  while (!seq.back().is_zero()) {
    Polynomial r = -(seq[seq.size() - 2] % seq.back());
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  return seq;
}

inline int sign_changes(const std::vector<Polynomial>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& s : seq) {
    const Rational v = s(x);
    const int sg = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

}  // namespace detail

struct RationalRoot {
  Rational root;
  int multiplicity;
};

/// All rational roots with multiplicities, in increasing order.
///
/// Real roots of the squarefree part are isolated by Sturm bisection; once an
/// isolating interval is narrower than 1/(2|a_n|) (a_n the leading
/// coefficient of the primitive integer form), the only possible rational
/// root u/v in it has v | a_n, so u*|a_n|/v is the unique candidate integer
/// in the scaled interval.
inline std::vector<RationalRoot> rational_roots(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::invalid_input, "rational roots of the zero polynomial");
  std::vector<RationalRoot> out;
  if (p.degree() < 1) return out;
  const Polynomial f = squarefree_part(p);
  const auto prim = primitive_integer_coefficients(f);
  Integer lead = prim.back();
  if (lead < 0) lead = -lead;
  const Rational target_width(Integer(1), Integer(2 * lead));
  const auto seq = detail::sturm_sequence(f);
  const Rational bound = cauchy_root_bound(f);

  std::vector<Rational> found;
  auto count = [&](const Rational& lo, const Rational& hi) {
    return detail::sign_changes(seq, lo) - detail::sign_changes(seq, hi);
  };
  // Intervals (lo, hi] with at least one root.
  std::vector<std::pair<Rational, Rational>> work;
  if (count(-bound, bound) > 0) work.emplace_back(-bound, bound);
  while (!work.empty()) {
    auto [lo, hi] = work.back();
    work.pop_back();
    const int n = count(lo, hi);
    if (n == 0) continue;
    if (n == 1 && hi - lo < target_width) {
      const Integer kmin = ceil_of(lo * lead), kmax = floor_of(hi * lead);
      for (Integer k = kmin; k <= kmax; ++k) {
        Rational cand(k, lead);
        cand.canonicalize();
        if (cand > lo && f(cand) == 0) found.push_back(cand);
      }
      continue;
    }
    Rational mid = (lo + hi) / 2;
    if (f(mid) == 0) found.push_back(mid);
    work.emplace_back(lo, mid);
    work.emplace_back(mid, hi);
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  for (const auto& r : found) out.push_back({r, multiplicity(Polynomial::linear_root(r), p)});
  return out;
}

/// Res(p, q) = lc(p)^deg(q) * prod_{p(a)=0} q(a).
inline Rational resultant(Polynomial f, Polynomial g) {
  if (f.is_zero() || g.is_zero()) throw Error(ErrorCode::invalid_input, "resultant with a zero polynomial");
  Rational acc = 1;
  while (true) {
    const int n = f.degree(), m = g.degree();
    if (m == 0) {
      Rational c = g.leading();
      Rational pw = 1;
      for (int i = 0; i < n; ++i) pw *= c;
      return acc * pw;
    }
    if (n == 0) {
      Rational c = f.leading();
      Rational pw = 1;
      for (int i = 0; i < m; ++i) pw *= c;
      return acc * pw;
    }
    if (n < m) {
      if ((n * m) % 2 == 1) acc = -acc;
      std::swap(f, g);
      continue;
    }
    Polynomial r = f % g;
    if (r.is_zero()) return 0;
    // Res(f, g) = (-1)^{nm} lc(g)^{n - deg r} Res(g, r)
    if ((n * m) % 2 == 1) acc = -acc;
    const Rational lg = g.leading();
    for (int i = 0; i < n - r.degree(); ++i) acc *= lg;
    f = std::move(g);
    g = std::move(r);
  }
}

/// Newton interpolation through (xs[i], ys[i]) with distinct xs.
inline Polynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  const std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
      if (i == level) break;
    }
  Polynomial result;
  for (std::size_t i = n; i-- > 0;) {
    result = result * Polynomial({Rational(-xs[i]), Rational(1)}) + Polynomial(dd[i]);
  }
  return result;
}

}  // namespace dopb
