#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dopb/local_analysis.hpp"

namespace dopb {

// ---------------------------------------------------------------------------
// Fuchs relation

struct FuchsPoint {
  PointSpec point;
  int orbit_size = 1;
  Rational S_rho;  // summed over the orbit
};

struct FuchsSummary {
  int order = 0;
  std::vector<FuchsPoint> per_point;  // finite singular points, then infinity
  Rational total;
};

/// S_rho = (sum of exponents) - r(r-1)/2 at every singular point and at
/// infinity. Only exponent sums enter, read from the indicial coefficients,
/// so irrational exponents need no root finding.
inline FuchsSummary fuchs_summary(const DiffOperator& op) {
  if (op.is_zero() || op.order() < 1) throw Error(ErrorCode::invalid_input, "Fuchs relation needs an operator of order >= 1");
  FuchsSummary out;
  out.order = op.order();
  Rational half(out.order * (out.order - 1), 2);
  half.canonicalize();
  std::vector<PointSpec> points = singular_points(op);
  points.push_back(PointSpec::infinity());
  for (const auto& p : points) {
    if (katz_rank(op, p) != 0)
      throw Error(ErrorCode::unsupported,
                  "operator is not Fuchsian (irregular at " + p.to_string(op.var()) + "); the generalized relation is not implemented");
  }
  out.total = 0;
  for (const auto& p : points) {
    const IndicialPolynomial ind = indicial_polynomial(op, p);
    const Polynomial& n = ind.norm;
    const Rational sum = -n.coeff(n.degree() - 1) / n.leading();
    FuchsPoint fp{p, p.size(), sum - half * p.size()};
    out.total += fp.S_rho;
    out.per_point.push_back(std::move(fp));
  }
  return out;
}

struct FuchsCheck {
  bool holds = false;
  Rational expected;  // -r(r-1)
  FuchsSummary summary;
};

inline FuchsCheck check_fuchs_relation(const DiffOperator& op) {
  FuchsCheck out;
  out.summary = fuchs_summary(op);
  const int r = out.summary.order;
  out.expected = -r * (r - 1);
  out.holds = out.summary.total == out.expected;
  return out;
}

// ---------------------------------------------------------------------------
// Degree bound for monic right factors

enum class Provenance { computed, user_supplied, bcy_tower };

inline std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::computed: return "computed";
    case Provenance::user_supplied: return "user-supplied";
    case Provenance::bcy_tower: return "bcy-tower";
  }
  return "";
}

struct BoundInputs {
  int r = 0;
  Rational E;
  Rational N;
  int S = 0;
  std::vector<Rational> per_point_E;  // optional: one entry per point at infinity / non-apparent finite point
  std::optional<int> q;
  std::optional<int> sing_count;
  Provenance provenance = Provenance::computed;
};

struct Refinements {
  bool sum_E = false;       // (S+1) E  ->  sum of per-point largest moduli
  bool n_minus_1 = false;   // r N  ->  r (N - 1) when N >= 1
  bool min_slopes = false;  // (S+1) N  ->  min((S+1) N, 2q + 1 - #Sing) in the apparent-point count

  static Refinements all() { return {true, true, true}; }
};

struct BoundReport {
  BoundInputs inputs;
  Refinements requested;
  Refinements applied;
  std::array<Rational, 4> terms_plain;
  std::array<Rational, 4> terms_refined;
  Rational plain_bound;
  Rational refined_bound;

  Integer plain_ceiling() const { return ceil_of(plain_bound); }
  Integer refined_ceiling() const { return ceil_of(refined_bound); }
};

/// deg_z(M) <= r^2 (S+1) E + r (N+1) S + r N + r^2 (r-1) ((S+1)(N+1) - 2) / 2
/// for a monic right factor M of order r. The sum of the terms is clamped at
/// 0 (it can only be negative for S = N = 0 and E < (r-1)/2, where deg >= 0
/// is the better statement).
inline BoundReport theorem1_bound(const BoundInputs& in, Refinements refine = {}) {
  if (in.r < 0 || in.E < 0 || in.N < 0 || in.S < 0)
    throw Error(ErrorCode::invalid_input, "bound parameters must be nonnegative");
  if (in.q && *in.q < 0) throw Error(ErrorCode::invalid_input, "q must be nonnegative");
  if (in.sing_count && *in.sing_count < 0) throw Error(ErrorCode::invalid_input, "#Sing must be nonnegative");
  for (const auto& e : in.per_point_E)
    if (e < 0 || e > in.E) throw Error(ErrorCode::invalid_input, "per-point exponent bounds must lie in [0, E]");
  if (in.per_point_E.size() > static_cast<std::size_t>(in.S) + 1)
    throw Error(ErrorCode::invalid_input, "at most S+1 per-point exponent bounds");
  if (refine.sum_E && in.per_point_E.empty())
    throw Error(ErrorCode::invalid_input, "sum-of-E refinement needs per-point exponent bounds");
  if (refine.min_slopes && (!in.q || !in.sing_count))
    throw Error(ErrorCode::invalid_input, "min-slopes refinement needs q and #Sing");

  BoundReport rep;
  rep.inputs = in;
  rep.requested = refine;
  const Rational r = in.r, S = in.S, N = in.N, E = in.E;
  const Rational half_r2_rm1 = r * r * (r - 1) / 2;

  rep.terms_plain = {r * r * (S + 1) * E, r * (N + 1) * S, r * N, half_r2_rm1 * ((S + 1) * (N + 1) - 2)};

  rep.terms_refined = rep.terms_plain;
  if (refine.sum_E) {
    Rational sum = 0;
    for (const auto& e : in.per_point_E) sum += e;
    rep.terms_refined[0] = r * r * sum;
    rep.applied.sum_E = true;
  }
  if (refine.n_minus_1 && N >= 1) {
    rep.terms_refined[2] = r * (N - 1);
    rep.applied.n_minus_1 = true;
  }
  if (refine.min_slopes) {
    const Rational alt = 2 * *in.q + 1 - *in.sing_count;
    const Rational slope_term = std::min(Rational((S + 1) * N), alt);
    rep.terms_refined[3] = half_r2_rm1 * ((S + 1) + slope_term - 2);
    rep.applied.min_slopes = true;
  }
  auto total = [](const std::array<Rational, 4>& t) {
    Rational s = t[0] + t[1] + t[2] + t[3];
    return s < 0 ? Rational(0) : s;
  };
  rep.plain_bound = total(rep.terms_plain);
  rep.refined_bound = total(rep.terms_refined);
  return rep;
}

/// Bounds for every candidate factor order of an operator, with census
/// inputs. Strict and relaxed apparent-point conventions are reported side
/// by side, together with the coarse inputs N <= m + q, S <= q.
struct OperatorBoundReport {
  GlobalCensus census;
  Provenance E_provenance = Provenance::computed;
  Rational E;
  std::vector<BoundReport> strict;   // index r - 1
  std::vector<BoundReport> relaxed;  // index r - 1
  std::vector<BoundReport> coarse;   // index r - 1

  const BoundReport& at(int r, bool relaxed_count = false) const {
    return (relaxed_count ? relaxed : strict).at(static_cast<std::size_t>(r - 1));
  }
};

inline OperatorBoundReport bound_from_operator(const DiffOperator& op, const std::optional<Rational>& E_override,
                                               Refinements refine = Refinements::all(), CensusOptions options = {}) {
  OperatorBoundReport out;
  out.census = global_census(op, options);
  const GlobalCensus& c = out.census;
  if (E_override) {
    if (*E_override < 0) throw Error(ErrorCode::invalid_input, "E must be nonnegative");
    out.E = *E_override;
    out.E_provenance = Provenance::user_supplied;
  } else if (c.E_fuchsian) {
    out.E = *c.E_fuchsian;
    out.E_provenance = Provenance::computed;
  } else {
    throw Error(ErrorCode::needs_exponent_bound,
                "operator is irregular (largest slope " + to_string(c.N_max) + "); supply an exponent bound E");
  }
  for (int r = 1; r <= c.order; ++r) {
    for (int pass = 0; pass < 2; ++pass) {
      const bool relaxed = pass == 1;
      BoundInputs in;
      in.r = r;
      in.E = out.E;
      in.N = c.N_max;
      in.S = relaxed ? c.S_relaxed : c.S;
      in.q = c.degree;
      in.sing_count = c.sing_count_total;
      in.provenance = out.E_provenance;
      Refinements rf = refine;
      // Per-point moduli are only known when E itself comes from the census.
      // Relaxed-apparent points may carry negative exponents of a factor, so
      // the relaxed count keeps the global E.
      if (!E_override && !relaxed) in.per_point_E = c.per_point_E(false);
      if (in.per_point_E.empty()) rf.sum_E = false;
      (relaxed ? out.relaxed : out.strict).push_back(theorem1_bound(in, rf));
    }
    BoundInputs coarse;
    coarse.r = r;
    coarse.E = out.E;
    coarse.N = c.order + c.degree;
    coarse.S = c.degree;
    coarse.provenance = out.E_provenance;
    out.coarse.push_back(theorem1_bound(coarse));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exponent tower and valuation cutoff

namespace detail {

inline std::size_t bit_length(const Integer& x) { return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2); }

/// Certified rational upper bound on log2(x), x >= 1, with `frac_bits`
/// binary digits: repeated squaring of the mantissa, rounded up at each step.
inline Rational log2_upper(const Integer& x, int frac_bits = 32) {
  if (x < 1) throw Error(ErrorCode::invalid_input, "log2 of a nonpositive integer");
  const long int_part = static_cast<long>(bit_length(x)) - 1;
  constexpr unsigned long kPrec = 96;
  // mantissa m = M / 2^kPrec in [1, 2), rounded up
  Integer M;
  if (static_cast<unsigned long>(int_part) >= kPrec) {
    mpz_cdiv_q_2exp(M.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(int_part) - kPrec);
  } else {
    mpz_mul_2exp(M.get_mpz_t(), x.get_mpz_t(), kPrec - static_cast<unsigned long>(int_part));
  }
  Integer two;
  mpz_ui_pow_ui(two.get_mpz_t(), 2, kPrec + 1);
  Integer frac = 0;
  for (int i = 0; i < frac_bits; ++i) {
    Integer sq = M * M;
    mpz_cdiv_q_2exp(M.get_mpz_t(), sq.get_mpz_t(), kPrec);
    frac <<= 1;
    if (M >= two) {
      frac += 1;
      mpz_cdiv_q_2exp(M.get_mpz_t(), M.get_mpz_t(), 1);
    }
  }
  Integer denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 2, static_cast<unsigned long>(frac_bits));
  Rational out(Integer(int_part) * denom + frac + 1, denom);
  out.canonicalize();
  return out;
}

inline Integer ipow(const Integer& base, const Integer& e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e.get_ui());
  return r;
}

}  // namespace detail

/// 2^(a^e) * H^(b^f) with a = 36(q+1)m kappa, b = 5 kappa (q+1) m,
/// e = f = 9 (q+1)^2 m^(3m). The bound itself is never materialized.
struct TowerBound {
  Integer a, e, b, f, H;
  /// log2 of the bound: a^e + b^f log2(H), as an integer upper bound using
  /// ceil(log2 H); exact when H is a power of two. Absent when a^e is too
  /// large to hold.
  std::optional<Integer> log2_estimate;
  bool log2_exact = false;
  /// Certified upper bound on log2(log2(bound)).
  Rational log2_log2_upper;
  /// Height convention used for H.
  std::string height_convention = "naive: max |integer coefficient| of the primitive polynomial form";
};

inline constexpr std::size_t kTowerExactBitLimit = std::size_t{1} << 24;

inline TowerBound bcy_exponent_bound(int q, int m, int kappa, const Integer& H) {
  if (m < 1) throw Error(ErrorCode::invalid_input, "order m must be at least 1");
  if (kappa < 1) throw Error(ErrorCode::invalid_input, "field degree kappa must be at least 1");
  if (H < 1) throw Error(ErrorCode::invalid_input, "height must be at least 1");
  if (q < 0) throw Error(ErrorCode::invalid_input, "degree q must be nonnegative");
  TowerBound t;
  const Integer qp1 = q + 1;
  t.a = 36 * qp1 * m * kappa;
  t.b = 5 * kappa * qp1 * m;
  Integer m3m;
  mpz_ui_pow_ui(m3m.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(3 * m));
  t.e = 9 * qp1 * qp1 * m3m;
  t.f = t.e;
  t.H = H;
  // ceil(log2 H) = bit length of H - 1
  const Integer c = H == 1 ? Integer(0) : Integer(static_cast<unsigned long>(detail::bit_length(Integer(H - 1))));
  const bool h_pow2 = (H & (H - 1)) == 0;

  // log2(a^e + b^f c) <= max(e log2 a, f log2 b + log2 c) + 1
  const Rational la = detail::log2_upper(t.a), lb = detail::log2_upper(t.b);
  Rational top = Rational(t.e) * la;
  if (c > 0) top = std::max<Rational>(top, Rational(t.f) * lb + detail::log2_upper(c));
  top += 1;
  t.log2_log2_upper = detail::log2_upper(ceil_of(top));

  const Rational bits_needed = Rational(t.e) * la;
  if (bits_needed < Rational(static_cast<unsigned long>(kTowerExactBitLimit))) {
    t.log2_estimate = detail::ipow(t.a, t.e) + detail::ipow(t.b, t.f) * c;
    t.log2_exact = h_pow2;
  }
  return t;
}

/// floor(r(n+1) + 2(q+1)^2 m^3 + 2(q+1) m^2 (E+1)): if the first N+1 Taylor
/// coefficients of sum_{j<=r} P_j f^(j) (deg P_j <= n) vanish, it vanishes.
inline Integer valuation_bound(int r, int n, int q, int m, const Rational& E) {
  if (m < 1 || r < 1 || r > m) throw Error(ErrorCode::invalid_input, "order r must satisfy 1 <= r <= m");
  if (n < 0 || q < 0 || E < 0) throw Error(ErrorCode::invalid_input, "n, q, E must be nonnegative");
  const Rational qp1 = q + 1;
  const Rational value = Rational(r * (n + 1)) + 2 * qp1 * qp1 * m * m * m + 2 * qp1 * m * m * (E + 1);
  return floor_of(value);
}

/// Naive height: max |coefficient| of the primitive integer polynomial form.
inline Integer naive_height(const DiffOperator& op) {
  Integer h = 0;
  for (const auto& p : polynomial_form(op).coeffs)
    for (const auto& a : p.coefficients()) h = std::max(h, Integer(abs(a.get_num())));
  return h;
}

}  // namespace dopb
