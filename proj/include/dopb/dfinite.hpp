#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dopb/fuchs_bounds.hpp"
#include "dopb/linear_algebra.hpp"
#include "dopb/operator.hpp"
#include "dopb/roots.hpp"
#include "dopb/theta_form.hpp"

namespace dopb {

/// sum_s terms[s](n) u_{n+s} = 0 for every integer n, with u_k = 0 for k < 0.
struct RecurrenceOperator {
  std::map<int, Polynomial> terms;

  int shift_min() const { return terms.begin()->first; }
  int shift_max() const { return terms.rbegin()->first; }
  const Polynomial& leading() const { return terms.rbegin()->second; }

  /// Indices t >= 0 at which u_t is not determined by earlier terms.
  std::vector<int> blocking_indices() const {
    std::vector<int> out;
    const Polynomial lc = leading().shifted(-shift_max());  // lc(t - s_max) as a polynomial in t
    for (const auto& r : rational_roots(lc))
      if (is_integer(r.root) && r.root >= 0) out.push_back(static_cast<int>(r.root.get_num().get_si()));
    return out;
  }

  std::string to_string(const std::string& index = "n") const {
    std::string out;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      const int s = it->first;
      std::string u = "u(" + index + (s > 0 ? "+" + std::to_string(s) : s < 0 ? std::to_string(s) : "") + ")";
      if (!out.empty()) out += " + ";
      out += "(" + it->second.to_string(index) + ")*" + u;
    }
    return out + " = 0";
  }
};

/// The recurrence on Taylor coefficients at 0 induced by an operator with
/// polynomial coefficients: z^i D^j sends z^n to n(n-1)...(n-j+1) z^(n-j+i),
/// so the coefficient of u_{n+s} collects P_j(n+s) p_{j,i} over j - i = s.
inline RecurrenceOperator operator_to_recurrence(const DiffOperator& op) {
  if (op.is_zero()) throw Error(ErrorCode::invalid_input, "recurrence of the zero operator");
  RecurrenceOperator rec;
  for (int j = 0; j <= op.order(); ++j) {
    const RationalFunction& c = op.coefficients()[static_cast<std::size_t>(j)];
    if (c.is_zero()) continue;
    if (!c.is_polynomial()) throw Error(ErrorCode::invalid_input, "recurrence needs polynomial coefficients; clear denominators first");
    const Polynomial pj = falling_factorial_polynomial(j);
    const auto& coeffs = c.numerator().coefficients();
    for (int i = 0; i < static_cast<int>(coeffs.size()); ++i) {
      if (coeffs[static_cast<std::size_t>(i)] == 0) continue;
      const int s = j - i;
      rec.terms[s] += pj.shifted(s) * coeffs[static_cast<std::size_t>(i)];
    }
  }
  for (auto it = rec.terms.begin(); it != rec.terms.end();) it = it->second.is_zero() ? rec.terms.erase(it) : std::next(it);
  if (rec.terms.empty()) throw Error(ErrorCode::inconsistency, "operator induces the zero recurrence");
  return rec;
}

class NeedsMoreTerms : public Error {
 public:
  NeedsMoreTerms(int index, const std::string& detail)
      : Error(ErrorCode::needs_more_initial_terms, "coefficient " + std::to_string(index) + " is not determined by the recurrence" + detail),
        index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// Taylor coefficients at 0 of a series, either given explicitly or
/// extended on demand from a recurrence.
class SeriesContext {
 public:
  enum class Source { explicit_list, recurrence };

  explicit SeriesContext(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}
  SeriesContext(std::vector<Rational> initial, RecurrenceOperator rec) : coeffs_(std::move(initial)), rec_(std::move(rec)) {}
  SeriesContext(std::vector<Rational> initial, const DiffOperator& op)
      : SeriesContext(std::move(initial), operator_to_recurrence(from_polynomial_form(polynomial_form(op).coeffs, op.var()))) {}

  Source source() const { return rec_ ? Source::recurrence : Source::explicit_list; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  const std::optional<RecurrenceOperator>& recurrence() const { return rec_; }
  int size() const { return static_cast<int>(coeffs_.size()); }

  Rational at(int k) const {
    if (k < 0) return 0;
    if (k >= size()) throw NeedsMoreTerms(k, ": only " + std::to_string(size()) + " coefficients available");
    return coeffs_[static_cast<std::size_t>(k)];
  }

  /// Makes coefficients 0..upto available.
  void extend(int upto) {
    if (upto < size()) return;
    if (!rec_) throw NeedsMoreTerms(size(), ": the series has no recurrence to extend it");
    const int smax = rec_->shift_max();
    const Polynomial& lc = rec_->leading();
    for (int t = size(); t <= upto; ++t) {
      const int n = t - smax;
      const Rational lead = lc(n);
      if (lead == 0) {
        std::string blocked;
        for (int b : rec_->blocking_indices()) blocked += (blocked.empty() ? "" : ", ") + std::to_string(b);
        throw NeedsMoreTerms(t, "; initial terms are required past the blocking indices {" + blocked + "}");
      }
      Rational acc = 0;
      for (const auto& [s, poly] : rec_->terms) {
        if (s == smax) continue;
        const int k = n + s;
        if (k < 0) continue;
        acc += poly(n) * coeffs_[static_cast<std::size_t>(k)];
      }
      coeffs_.push_back(-acc / lead);
    }
  }

 private:
  std::vector<Rational> coeffs_;
  std::optional<RecurrenceOperator> rec_;
};

inline SeriesContext extend_coefficients(SeriesContext ctx, int upto) {
  ctx.extend(upto);
  return ctx;
}

/// Taylor coefficients 0..upto of op applied to the series. Coefficients of
/// op must be analytic at 0.
inline std::vector<Rational> apply_operator(const DiffOperator& op, SeriesContext& ctx, int upto) {
  if (upto < 0) return {};
  std::vector<LaurentWindow> expansions;
  int need = -1;  // highest series index read: upto - val(c_j) + j
  for (int j = 0; j <= op.order(); ++j) {
    const RationalFunction& c = op.coefficients()[static_cast<std::size_t>(j)];
    if (c.is_zero()) {
      expansions.emplace_back();
      continue;
    }
    const int v = c.valuation_at_zero();
    if (v < 0) throw Error(ErrorCode::invalid_input, "operator coefficient has a pole at 0");
    expansions.push_back(laurent_window(c, upto + 1));
    if (v <= upto) need = std::max(need, upto - v + j);
  }
  if (ctx.size() <= need) ctx.extend(need);
  std::vector<Rational> out(static_cast<std::size_t>(upto) + 1);
  for (int j = 0; j <= op.order(); ++j) {
    const auto& e = expansions[static_cast<std::size_t>(j)];
    if (e.is_zero()) continue;
    for (int k = 0; k <= upto; ++k) {
      Rational acc = 0;
      for (int i = e.valuation; i <= k; ++i) {
        const Rational a = e.at(i);
        if (a == 0) continue;
        // [z^(k-i)] f^(j) = (k-i+1)...(k-i+j) f_{k-i+j}
        const int idx = k - i + j;
        Rational ff = 1;
        for (int t = 0; t < j; ++t) ff *= idx - t;
        acc += a * ff * ctx.at(idx);
      }
      out[static_cast<std::size_t>(k)] += acc;
    }
  }
  return out;
}

inline std::vector<Rational> apply_operator(const DiffOperator& op, const SeriesContext& ctx, int upto) {
  SeriesContext copy = ctx;
  return apply_operator(op, copy, upto);
}

struct MinimizationResult {
  bool found = false;
  DiffOperator op;  // monic
  int order = 0;
  int degree_cap = 0;
  Integer cutoff;                   // N: coefficients 0..N of R(z) are checked
  Rational E;                       // exponent bound used in the cutoff
  Provenance E_provenance = Provenance::computed;
  bool degree_cap_from_bound = false;
  std::vector<Rational> certificate;  // R(z) coefficients 0..N, all zero when found
  bool right_factor_verified = false;
  std::vector<int> orders_tried;
};

/// Smallest-order annihilator of the series among right factors of L:
/// for r = 1..m, search polynomials P_0..P_r of degree <= n (the degree cap,
/// by default the ceiling of the degree bound) such that the first N+1
/// Taylor coefficients of sum P_j f^(j) vanish, N the valuation cutoff.
inline MinimizationResult minimize(const DiffOperator& L, const std::vector<Rational>& initial,
                                   std::optional<int> degree_cap, std::optional<Rational> E_override) {
  if (L.is_zero() || L.order() < 1) throw Error(ErrorCode::invalid_input, "minimize needs an operator of order >= 1");
  if (degree_cap && *degree_cap < 0) throw Error(ErrorCode::invalid_input, "degree cap must be nonnegative");
  const PolynomialForm pf = polynomial_form(L);
  const DiffOperator Lpoly = from_polynomial_form(pf.coeffs, L.var());
  const int m = pf.order(), q = pf.degree();

  MinimizationResult res;
  std::optional<OperatorBoundReport> bounds;
  if (E_override) {
    if (*E_override < 0) throw Error(ErrorCode::invalid_input, "E must be nonnegative");
    res.E = *E_override;
    res.E_provenance = Provenance::user_supplied;
  }
  if (!degree_cap || !E_override) {
    bounds = bound_from_operator(L, E_override);  // throws needs-exponent-bound when irregular
    res.E = bounds->E;
    res.E_provenance = bounds->E_provenance;
  }

  SeriesContext ctx(initial, operator_to_recurrence(Lpoly));
  for (int r = 1; r <= m; ++r) {
    const int n = degree_cap ? *degree_cap : static_cast<int>(bounds->at(r).refined_ceiling().get_si());
    const Integer cutoff = valuation_bound(r, n, q, m, res.E);
    const int N = static_cast<int>(cutoff.get_si());
    res.orders_tried.push_back(r);

    ctx.extend(N + r + m);
    const auto check = apply_operator(Lpoly, ctx, N);
    for (std::size_t k = 0; k < check.size(); ++k)
      if (check[k] != 0)
        throw Error(ErrorCode::inconsistency, "the series is not annihilated by L (coefficient " + std::to_string(k) + ")");

    // unknown (j, i) -> column j (n+1) + i; row k: [z^k] z^i f^(j)
    const std::size_t cols = static_cast<std::size_t>((r + 1) * (n + 1));
    Matrix a(static_cast<std::size_t>(N) + 1, std::vector<Rational>(cols));
    for (int k = 0; k <= N; ++k)
      for (int j = 0; j <= r; ++j)
        for (int i = 0; i <= std::min(n, k); ++i) {
          const int idx = k - i + j;
          Rational ff = 1;
          for (int t = 0; t < j; ++t) ff *= idx - t;
          a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j * (n + 1) + i)] = ff * ctx.at(idx);
        }
    const auto kernel = kernel_basis(a, cols);
    if (kernel.empty()) continue;

    const auto& v = kernel.front();
    std::vector<Polynomial> P;
    for (int j = 0; j <= r; ++j) {
      std::vector<Rational> c(v.begin() + j * (n + 1), v.begin() + (j + 1) * (n + 1));
      P.emplace_back(std::move(c));
    }
    const DiffOperator M = from_polynomial_form(P, L.var());
    res.found = true;
    res.op = normalize_monic(M);
    res.order = res.op.order();
    res.degree_cap = n;
    res.degree_cap_from_bound = !degree_cap;
    res.cutoff = cutoff;
    res.certificate = apply_operator(M, ctx, N);
    res.right_factor_verified = right_divmod(L, res.op).remainder.is_zero();
    return res;
  }
  throw Error(ErrorCode::inconsistency, "no annihilator of order <= " + std::to_string(m) +
                                            " found; the series is not a solution of L to the checked precision");
}

}  // namespace dopb
