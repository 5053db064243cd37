#pragma once

#include <climits>
#include <utility>
#include <vector>

#include "dopb/operator.hpp"
#include "dopb/point.hpp"

namespace dopb {

/// Truncated Laurent series: coeffs[i] multiplies z^(valuation + i).
/// A zero series has an empty window and valuation INT_MAX.
struct LaurentWindow {
  int valuation = INT_MAX;
  std::vector<Rational> coeffs;

  bool is_zero() const { return coeffs.empty(); }
  Rational at(int exponent) const {
    const long i = static_cast<long>(exponent) - valuation;
    if (is_zero() || i < 0 || i >= static_cast<long>(coeffs.size())) return 0;
    return coeffs[static_cast<std::size_t>(i)];
  }
};

inline LaurentWindow laurent_window(const RationalFunction& f, int window) {
  if (f.is_zero()) return {};
  return {f.valuation_at_zero(), f.laurent_at_zero(window)};
}

/// P_j(x) = x (x-1) ... (x-j+1), so that D^j = z^-j P_j(theta).
inline Polynomial falling_factorial_polynomial(int j) {
  Polynomial p(1);
  for (int k = 0; k < j; ++k) p *= Polynomial::linear_root(k);
  return p;
}

/// sum_k b_k(z) theta^k, theta = t d/dt in the local variable t at the point.
struct ThetaForm {
  PointSpec point;
  std::vector<RationalFunction> exact;   // b_k as rational functions of t
  std::vector<LaurentWindow> coefficients;  // truncated expansions of b_k

  int order() const { return static_cast<int>(exact.size()) - 1; }
};

/// Operator expressed in the local variable t at the point: z = t + rho for
/// rational rho, z = 1/t at infinity.
inline DiffOperator localize(const DiffOperator& op, const PointSpec& point) {
  switch (point.kind) {
    case PointSpec::Kind::rational: return point.value == 0 ? op : shift_point(op, point.value);
    case PointSpec::Kind::infinity: return invert_variable(op);
    case PointSpec::Kind::orbit: break;
  }
  throw Error(ErrorCode::invalid_input, "theta expansion needs a rational point or infinity");
}

/// theta-form of the operator at a rational point or at infinity; each b_k is
/// kept exactly and expanded to `window` Laurent coefficients from its
/// (exact) valuation.
inline ThetaForm to_theta_form(const DiffOperator& op, const PointSpec& point, int window) {
  if (window < 1) throw Error(ErrorCode::invalid_input, "theta window must be at least 1");
  if (op.is_zero()) throw Error(ErrorCode::invalid_input, "theta form of the zero operator");
  const DiffOperator local = localize(op, point);
  const int mu = local.order();
  ThetaForm out;
  out.point = point;
  out.exact.assign(static_cast<std::size_t>(mu) + 1, RationalFunction());
  for (int j = 0; j <= mu; ++j) {
    const RationalFunction cj = local.coeff(j);
    if (cj.is_zero()) continue;
    const RationalFunction scaled = cj * RationalFunction(Polynomial(1), Polynomial::monomial(1, j));
    const Polynomial pj = falling_factorial_polynomial(j);
    for (int k = 0; k <= j; ++k) {
      const Rational s = pj.coeff(k);
      if (s != 0) out.exact[static_cast<std::size_t>(k)] += RationalFunction(s) * scaled;
    }
  }
  for (const auto& b : out.exact) out.coefficients.push_back(laurent_window(b, window));
  return out;
}

/// Inverse map: theta^k = sum_j S(k, j) t^j D^j, S the Stirling numbers of
/// the second kind. Returns the D-form coefficients in the local variable.
inline std::vector<LaurentWindow> theta_form_to_derivation_windows(const ThetaForm& tf, int window) {
  const int mu = tf.order();
  // S(k, j) by the recurrence S(k+1, j) = j S(k, j) + S(k, j-1).
  std::vector<std::vector<Rational>> S(static_cast<std::size_t>(mu) + 1, std::vector<Rational>(static_cast<std::size_t>(mu) + 1));
  S[0][0] = 1;
  for (int k = 0; k < mu; ++k)
    for (int j = 0; j <= k + 1; ++j) {
      Rational v = j <= k ? Rational(S[k][j] * j) : Rational(0);
      if (j > 0) v += S[k][j - 1];
      S[k + 1][j] = v;
    }
  std::vector<LaurentWindow> out;
  for (int j = 0; j <= mu; ++j) {
    // c_j = t^j sum_{k >= j} S(k, j) b_k
    int val = INT_MAX;
    for (int k = j; k <= mu; ++k)
      if (S[k][j] != 0 && !tf.coefficients[k].is_zero()) val = std::min(val, tf.coefficients[k].valuation);
    if (val == INT_MAX) {
      out.emplace_back();
      continue;
    }
    LaurentWindow w{val + j, std::vector<Rational>(static_cast<std::size_t>(window))};
    for (int i = 0; i < window; ++i)
      for (int k = j; k <= mu; ++k)
        if (S[k][j] != 0) w.coeffs[static_cast<std::size_t>(i)] += S[k][j] * tf.coefficients[k].at(val + i);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace dopb
