#pragma once

#include <algorithm>
#include <climits>
#include <future>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "dopb/linear_algebra.hpp"
#include "dopb/newton_polygon.hpp"
#include "dopb/operator.hpp"
#include "dopb/point.hpp"
#include "dopb/quotient_ring.hpp"
#include "dopb/roots.hpp"
#include "dopb/theta_form.hpp"

namespace dopb {

inline constexpr int kInfiniteValuation = INT_MAX;

/// Order of c at the point: vanishing order at a rational point, the
/// multiplicity of the orbit polynomial (num minus den) at an orbit, and
/// deg(den) - deg(num) at infinity. Zero has valuation kInfiniteValuation.
inline int valuation(const RationalFunction& c, const PointSpec& point) {
  if (c.is_zero()) return kInfiniteValuation;
  switch (point.kind) {
    case PointSpec::Kind::infinity: return -c.degree();
    case PointSpec::Kind::rational:
      if (point.value == 0) return c.valuation_at_zero();
      [[fallthrough]];
    case PointSpec::Kind::orbit: {
      const Polynomial p = point.local_polynomial();
      return multiplicity(p, c.numerator()) - multiplicity(p, c.denominator());
    }
  }
  return 0;
}

/// Splits a squarefree polynomial into coprime factors on each of which
/// every polynomial in `against` has a uniform multiplicity and a unit
/// cofactor. Irreducible inputs come back unchanged.
inline std::vector<Polynomial> refine_orbit(const Polynomial& p, const std::vector<Polynomial>& against) {
  std::vector<Polynomial> work{p.monic()}, done;
  while (!work.empty()) {
    Polynomial q = std::move(work.back());
    work.pop_back();
    bool split = false;
    for (const auto& u : against) {
      if (u.is_zero() || q.degree() < 2) continue;
      const int v = multiplicity(q, u);
      const Polynomial rest = u / pow(q, v);
      const Polynomial g = gcd(q, rest);
      if (g.degree() > 0 && g.degree() < q.degree()) {
        work.push_back(g);
        work.push_back((q / g).monic());
        split = true;
        break;
      }
    }
    if (!split) done.push_back(std::move(q));
  }
  std::sort(done.begin(), done.end(), [](const Polynomial& a, const Polynomial& b) { return lex_less(a, b); });
  return done;
}

/// Newton polygon from the D-form valuations: hull of (j, v_j - j) at a
/// finite point, of (j, j + val_inf(c_j)) at infinity.
inline NewtonPolygon newton_polygon(const DiffOperator& op, const PointSpec& point) {
  if (op.is_zero()) throw Error(ErrorCode::invalid_input, "Newton polygon of the zero operator");
  std::vector<std::optional<int>> heights(static_cast<std::size_t>(op.order()) + 1);
  for (int j = 0; j <= op.order(); ++j) {
    const int v = valuation(op.coeff(j), point);
    if (v == kInfiniteValuation) continue;
    heights[static_cast<std::size_t>(j)] = point.kind == PointSpec::Kind::infinity ? v + j : v - j;
  }
  return lower_left_hull(heights);
}

/// Same polygon read off the theta-form support (rational points, infinity).
inline NewtonPolygon newton_polygon_from_theta(const DiffOperator& op, const PointSpec& point) {
  const ThetaForm tf = to_theta_form(op, point, 1);
  std::vector<std::optional<int>> heights(tf.coefficients.size());
  for (std::size_t k = 0; k < tf.coefficients.size(); ++k)
    if (!tf.coefficients[k].is_zero()) heights[k] = tf.coefficients[k].valuation;
  return lower_left_hull(heights);
}

inline Rational katz_rank(const DiffOperator& op, const PointSpec& point) {
  return newton_polygon(op, point).largest_slope();
}

/// Indicial polynomial at a point. Its lambda-coefficients live in
/// Q[x]/(modulus) at an orbit (modulus empty otherwise); `norm` is the
/// Q-polynomial whose roots are the exponents at all points of the orbit.
struct IndicialPolynomial {
  PointSpec point;
  Polynomial modulus;
  std::vector<Polynomial> coefficients;  // residues, ascending powers of lambda
  Polynomial norm;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

namespace detail {

inline void require_regular(const DiffOperator& op, const PointSpec& point) {
  if (katz_rank(op, point) != 0)
    throw Error(ErrorCode::unsupported,
                "irregular point " + point.to_string(op.var()) + ": generalized exponents are not computed");
}

inline Polynomial lift_constants(const std::vector<Polynomial>& residues) {
  std::vector<Rational> c;
  for (const auto& r : residues) c.push_back(r.coeff(0));
  return Polynomial(std::move(c));
}

}  // namespace detail

/// Indicial polynomial from leading Laurent coefficients: at a root a of the
/// orbit polynomial p, c_j = p^v u/w gives leading coefficient
/// p'(a)^v u(a)/w(a) in Q[x]/(p). The orbit must be refined against the
/// operator (see refine_orbit). Also valid at rational points (p = z - rho).
inline IndicialPolynomial indicial_by_leading_coefficients(const DiffOperator& op, const PointSpec& point) {
  if (!point.is_finite()) throw Error(ErrorCode::invalid_input, "leading-coefficient route needs a finite point");
  detail::require_regular(op, point);
  const Polynomial p = point.local_polynomial();
  const int mu = op.order();
  std::vector<int> layer(static_cast<std::size_t>(mu) + 1, kInfiniteValuation);
  int wmin = kInfiniteValuation;
  for (int j = 0; j <= mu; ++j) {
    const int v = valuation(op.coeff(j), point);
    if (v == kInfiniteValuation) continue;
    layer[static_cast<std::size_t>(j)] = v;
    wmin = std::min(wmin, v - j);
  }
  const QuotientElement dp = QuotientElement::evaluate(p, p.derivative());
  std::vector<QuotientElement> coeffs(static_cast<std::size_t>(mu) + 1, QuotientElement(p, Polynomial()));
  for (int j = 0; j <= mu; ++j) {
    const int v = layer[static_cast<std::size_t>(j)];
    if (v == kInfiniteValuation || v - j != wmin) continue;
    const RationalFunction& c = op.coefficients()[static_cast<std::size_t>(j)];
    const Polynomial u = c.numerator() / pow(p, std::max(v, 0));
    const Polynomial w = c.denominator() / pow(p, std::max(-v, 0));
    const QuotientElement lead =
        dp.pow(v) * QuotientElement::evaluate(p, u) * QuotientElement::evaluate(p, w).inverse();
    const Polynomial pj = falling_factorial_polynomial(j);
    for (int k = 0; k <= j; ++k)
      if (pj.coeff(k) != 0) coeffs[static_cast<std::size_t>(k)] = coeffs[static_cast<std::size_t>(k)] + lead * pj.coeff(k);
  }
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  IndicialPolynomial out;
  out.point = point;
  for (const auto& q : coeffs) out.coefficients.push_back(q.residue());
  if (p.degree() == 1) {
    out.norm = detail::lift_constants(out.coefficients);
    return out;
  }
  out.modulus = p;
  // norm(lambda) = Res_x(p(x), I(x, lambda)), interpolated at D+1 integer
  // nodes where D = deg(I) * deg(p).
  const int d = out.degree() * p.degree();
  std::vector<Rational> xs, ys;
  for (int i = 0; i <= d; ++i) {
    const Rational lam = i;
    Polynomial at;
    Rational pw = 1;
    for (const auto& r : out.coefficients) {
      at += r * pw;
      pw *= lam;
    }
    xs.push_back(lam);
    ys.push_back(at.is_zero() ? Rational(0) : resultant(p, at));
  }
  out.norm = interpolate(xs, ys);
  return out;
}

/// Indicial polynomial at a point with Katz rank 0. Rational points and
/// infinity read it off the minimal-valuation layer of the theta-form;
/// orbits use the leading-coefficient route in Q[x]/(p).
inline IndicialPolynomial indicial_polynomial(const DiffOperator& op, const PointSpec& point) {
  if (op.is_zero()) throw Error(ErrorCode::invalid_input, "indicial polynomial of the zero operator");
  if (point.kind == PointSpec::Kind::orbit) return indicial_by_leading_coefficients(op, point);
  detail::require_regular(op, point);
  const ThetaForm tf = to_theta_form(op, point, 1);
  int wmin = kInfiniteValuation;
  for (const auto& b : tf.coefficients)
    if (!b.is_zero()) wmin = std::min(wmin, b.valuation);
  std::vector<Rational> c;
  for (const auto& b : tf.coefficients) c.push_back(b.at(wmin));
  IndicialPolynomial out;
  out.point = point;
  out.norm = Polynomial(std::move(c));
  for (const auto& a : out.norm.coefficients()) out.coefficients.emplace_back(a);
  return out;
}

struct ExponentSummary {
  std::vector<RationalRoot> rational;  // rational roots of the norm
  bool all_rational = false;
  Rational modulus_bound;  // max |root|: exact when all_rational, Cauchy bound otherwise
  Rational sum;            // sum of all exponents over the orbit (with multiplicity)
};

inline ExponentSummary summarize_exponents(const IndicialPolynomial& ind) {
  ExponentSummary out;
  const Polynomial& n = ind.norm;
  out.rational = rational_roots(n);
  int found = 0;
  for (const auto& r : out.rational) found += r.multiplicity;
  out.all_rational = found == n.degree();
  if (out.all_rational) {
    out.modulus_bound = 0;
    for (const auto& r : out.rational) out.modulus_bound = std::max(out.modulus_bound, abs_of(r.root));
  } else {
    out.modulus_bound = cauchy_root_bound(n);
  }
  out.sum = n.degree() >= 1 ? Rational(-n.coeff(n.degree() - 1) / n.leading()) : Rational(0);
  return out;
}

enum class Apparent { yes, no, undecided_conservative };

inline std::string_view apparent_name(Apparent a) {
  switch (a) {
    case Apparent::yes: return "yes";
    case Apparent::no: return "no";
    case Apparent::undecided_conservative: return "undecided-conservative";
  }
  return "";
}

/// Dimension of the space of power series y = sum_{n<=degree_limit} y_n t^n
/// (t = z - rho) for which L(y) vanishes on the Laurent window
/// [w, w + degree_limit + extra], w the minimal theta-layer valuation.
inline std::size_t power_series_kernel_dimension(const DiffOperator& op, const Rational& rho, int degree_limit, int extra = 0) {
  const DiffOperator local = normalize_monic(rho == 0 ? op : shift_point(op, rho));
  const int mu = local.order();
  int w = kInfiniteValuation;
  std::vector<int> vals(static_cast<std::size_t>(mu) + 1);
  for (int j = 0; j <= mu; ++j) {
    vals[static_cast<std::size_t>(j)] = valuation(local.coeff(j), PointSpec::at(0));
    if (vals[static_cast<std::size_t>(j)] != kInfiniteValuation) w = std::min(w, vals[static_cast<std::size_t>(j)] - j);
  }
  const int top = w + degree_limit + extra;  // last exponent checked
  const int unknowns = degree_limit + extra + 1;
  std::vector<LaurentWindow> series(static_cast<std::size_t>(mu) + 1);
  for (int j = 0; j <= mu; ++j) {
    const int v = vals[static_cast<std::size_t>(j)];
    if (v == kInfiniteValuation) continue;
    series[static_cast<std::size_t>(j)] = laurent_window(local.coeff(j), std::max(1, top + mu - v + 1));
  }
  Matrix m(static_cast<std::size_t>(top - w + 1), std::vector<Rational>(static_cast<std::size_t>(unknowns)));
  for (int n = 0; n < unknowns; ++n) {
    Rational falling = 1;  // n (n-1) ... (n-j+1)
    for (int j = 0; j <= mu; ++j) {
      if (j > 0) falling *= n - j + 1;
      if (falling == 0) break;
      const auto& s = series[static_cast<std::size_t>(j)];
      if (s.is_zero()) continue;
      // c_j D^j t^n = falling * c_j t^(n-j); exponent e needs c_j at e - n + j
      for (int e = w; e <= top; ++e) {
        const Rational a = s.at(e - n + j);
        if (a != 0) m[static_cast<std::size_t>(e - w)][static_cast<std::size_t>(n)] += falling * a;
      }
    }
  }
  return static_cast<std::size_t>(unknowns) - rank(m, static_cast<std::size_t>(unknowns));
}

namespace detail {

/// Exponents that are mu distinct integers, each repeated `copies` times in
/// the norm (one copy per point of the orbit).
inline std::optional<std::vector<Integer>> distinct_integer_exponents(const ExponentSummary& ex, int mu, int copies) {
  if (!ex.all_rational || static_cast<int>(ex.rational.size()) != mu) return std::nullopt;
  std::vector<Integer> out;
  for (const auto& r : ex.rational) {
    if (!is_integer(r.root) || r.multiplicity != copies) return std::nullopt;
    out.push_back(r.root.get_num());
  }
  return out;
}

inline Polynomial singular_locus(const DiffOperator& op) { return monic_form(op).denominator; }

}  // namespace detail

/// Whether the operator admits a basis of power series solutions at a finite
/// singular point. Exact at rational points; at orbits only a definite "no"
/// is derived, otherwise undecided_conservative.
inline Apparent is_apparent(const DiffOperator& op, const PointSpec& point) {
  if (!point.is_finite()) throw Error(ErrorCode::invalid_input, "apparent singularities are finite points");
  const Polynomial lp = point.local_polynomial();
  if (!divides(lp, detail::singular_locus(op)))
    throw Error(ErrorCode::invalid_input, point.to_string(op.var()) + " is not a singular point");
  if (katz_rank(op, point) != 0) return Apparent::no;
  const int mu = op.order();
  const ExponentSummary ex = summarize_exponents(indicial_polynomial(op, point));
  const auto ints = detail::distinct_integer_exponents(ex, mu, point.size());
  if (!ints) return Apparent::no;
  for (const auto& e : *ints)
    if (e < 0) return Apparent::no;
  if (point.kind == PointSpec::Kind::orbit) return Apparent::undecided_conservative;
  const int emax = static_cast<int>(ints->back().get_si());
  return power_series_kernel_dimension(op, point.value, emax) == static_cast<std::size_t>(mu) ? Apparent::yes : Apparent::no;
}

enum class Classification { ordinary, regular_singular, irregular };

inline std::string_view classification_name(Classification c) {
  switch (c) {
    case Classification::ordinary: return "ordinary";
    case Classification::regular_singular: return "regular-singular";
    case Classification::irregular: return "irregular";
  }
  return "";
}

struct SingularityReport {
  PointSpec point;
  int orbit_size = 1;
  NewtonPolygon polygon;
  Rational katz_rank;
  Classification classification = Classification::ordinary;
  std::optional<IndicialPolynomial> indicial;  // absent at irregular points
  std::optional<ExponentSummary> exponents;
  std::optional<Apparent> apparent;  // finite singular points only
  /// Exponent-only criterion: regular singular with mu distinct integer
  /// exponents (negative allowed), logarithms not checked.
  bool relaxed_apparent = false;

  bool counts_strict() const { return apparent && *apparent != Apparent::yes; }
  bool counts_relaxed() const { return apparent && *apparent != Apparent::yes && !relaxed_apparent; }
};

/// Local report at a point. `singular` is decided by the caller (the point
/// divides the singular locus, or is infinity).
inline SingularityReport analyze_point(const DiffOperator& op, const PointSpec& point) {
  SingularityReport rep;
  rep.point = point;
  rep.orbit_size = point.size();
  rep.polygon = newton_polygon(op, point);
  rep.katz_rank = rep.polygon.largest_slope();
  bool singular;
  if (point.is_finite()) {
    singular = divides(point.local_polynomial(), detail::singular_locus(op));
  } else {
    singular = detail::singular_locus(invert_variable(op)).low_degree() > 0;
  }
  if (!singular)
    rep.classification = Classification::ordinary;
  else
    rep.classification = rep.katz_rank == 0 ? Classification::regular_singular : Classification::irregular;
  if (rep.katz_rank == 0) {
    rep.indicial = indicial_polynomial(op, point);
    rep.exponents = summarize_exponents(*rep.indicial);
  }
  if (singular && point.is_finite()) {
    rep.apparent = is_apparent(op, point);
    if (rep.classification == Classification::regular_singular && rep.exponents)
      rep.relaxed_apparent = detail::distinct_integer_exponents(*rep.exponents, op.order(), point.size()).has_value();
  }
  return rep;
}

/// Finite singular points: rational roots of the monic denominator V, and
/// orbit clusters of its remaining squarefree factors refined against the
/// monic numerators so that local data is uniform on each cluster.
inline std::vector<PointSpec> singular_points(const DiffOperator& op) {
  const MonicForm mf = monic_form(op);
  std::vector<PointSpec> out;
  if (mf.denominator.degree() < 1) return out;
  for (const auto& fp : squarefree_factorization(mf.denominator)) {
    Polynomial rest = fp.factor;
    for (const auto& r : rational_roots(fp.factor)) {
      out.push_back(PointSpec::at(r.root));
      rest = rest / Polynomial::linear_root(r.root);
    }
    if (rest.degree() >= 1)
      for (const auto& piece : refine_orbit(rest, mf.numerators)) out.push_back(PointSpec::roots_of(piece));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct GlobalCensus {
  int order = 0;                   // m
  int degree = 0;                  // q, max degree of the polynomial-form coefficients
  std::vector<SingularityReport> finite_singularities;
  SingularityReport infinity_report;
  int S = 0;           // finite non-apparent singular points, strict (power-series basis)
  int S_relaxed = 0;   // relaxed: points with distinct integer exponents not counted
  Rational N_max;      // largest slope over Sing and infinity
  std::optional<Rational> E_fuchsian;
  std::string E_provenance;  // "exact-rational" or "cauchy-bound" when any point needed the bound
  int sing_count_total = 0;  // #Sing(L), with orbit sizes

  bool fuchsian() const { return N_max == 0; }

  /// Largest exponent modulus at infinity and at each finite non-apparent
  /// point, one entry per complex point (orbits repeated).
  std::vector<Rational> per_point_E(bool relaxed) const {
    std::vector<Rational> out;
    if (!infinity_report.exponents) return {};
    out.push_back(infinity_report.exponents->modulus_bound);
    for (const auto& r : finite_singularities) {
      if (!(relaxed ? r.counts_relaxed() : r.counts_strict())) continue;
      if (!r.exponents) return {};
      for (int i = 0; i < r.orbit_size; ++i) out.push_back(r.exponents->modulus_bound);
    }
    return out;
  }
};

struct CensusOptions {
  bool parallel = true;
};

inline GlobalCensus global_census(const DiffOperator& op, CensusOptions options = {}) {
  if (op.is_zero()) throw Error(ErrorCode::invalid_input, "census of the zero operator");
  if (op.order() < 1) throw Error(ErrorCode::invalid_input, "census needs an operator of order at least 1");
  GlobalCensus census;
  const PolynomialForm pf = polynomial_form(op);
  census.order = pf.order();
  census.degree = pf.degree();
  const std::vector<PointSpec> points = singular_points(op);

  // Each report is a pure function of (op, point); merge in point order.
  if (options.parallel && points.size() > 1 && std::thread::hardware_concurrency() > 1) {
    std::vector<std::future<SingularityReport>> jobs;
    for (const auto& p : points) jobs.push_back(std::async(std::launch::async, [&op, p] { return analyze_point(op, p); }));
    for (auto& j : jobs) census.finite_singularities.push_back(j.get());
  } else {
    for (const auto& p : points) census.finite_singularities.push_back(analyze_point(op, p));
  }
  census.infinity_report = analyze_point(op, PointSpec::infinity());

  census.N_max = census.infinity_report.katz_rank;
  bool fuchsian = census.infinity_report.katz_rank == 0;
  for (const auto& r : census.finite_singularities) {
    census.sing_count_total += r.orbit_size;
    if (r.counts_strict()) census.S += r.orbit_size;
    if (r.counts_relaxed()) census.S_relaxed += r.orbit_size;
    census.N_max = std::max(census.N_max, r.katz_rank);
    fuchsian = fuchsian && r.katz_rank == 0;
  }
  if (fuchsian) {
    Rational e = census.infinity_report.exponents->modulus_bound;
    bool exact = census.infinity_report.exponents->all_rational;
    for (const auto& r : census.finite_singularities) {
      e = std::max(e, r.exponents->modulus_bound);
      exact = exact && r.exponents->all_rational;
    }
    census.E_fuchsian = e;
    census.E_provenance = exact ? "exact-rational" : "cauchy-bound";
  }
  return census;
}

}  // namespace dopb
