#include "catch_amalgamated.hpp"

#include "dopb/local_analysis.hpp"
#include "support.hpp"

using namespace dopb;
using testing::fn;
using testing::op;
using testing::poly;

namespace {

const PointSpec zero = PointSpec::at(0);
const PointSpec inf = PointSpec::infinity();

/// sum_i a_i(z) log(z)^i, closed under d/dz.
using LogPoly = std::vector<RationalFunction>;

LogPoly d(const LogPoly& f) {
  LogPoly out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] += f[i].derivative();
    if (i > 0) out[i - 1] += RationalFunction(Rational(static_cast<long>(i))) * f[i] * fn("1/z");
  }
  return out;
}

LogPoly mul(const LogPoly& a, const LogPoly& b) {
  LogPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

LogPoly sub(LogPoly a, const LogPoly& b) {
  a.resize(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

RationalFunction log_free(const LogPoly& f) {
  for (std::size_t i = 1; i < f.size(); ++i) REQUIRE(f[i].is_zero());
  return f.empty() ? RationalFunction() : f[0];
}

/// The order-2 operator with solution basis {y1, y2}: expand the Wronskian
/// determinant det[[y, y1, y2], [y', y1', y2'], [y'', y1'', y2'']] along y.
DiffOperator wronskian_operator(const LogPoly& y1, const LogPoly& y2) {
  const LogPoly a1 = d(y1), a2 = d(a1), b1 = d(y2), b2 = d(b1);
  const RationalFunction c2 = log_free(sub(mul(y1, b1), mul(y2, a1)));
  const RationalFunction c1 = -log_free(sub(mul(y1, b2), mul(y2, a2)));
  const RationalFunction c0 = log_free(sub(mul(a1, b2), mul(b1, a2)));
  return DiffOperator({c0, c1, c2});
}

DiffOperator log_operator() { return wronskian_operator({fn("z^2")}, {fn("1"), fn("z^2")}); }

DiffOperator gauss(const Rational& a, const Rational& b, const Rational& c) {
  return DiffOperator({RationalFunction(Rational(-a * b)), RationalFunction(Polynomial{c, Rational(-(a + b + 1))}),
                       RationalFunction(poly("z - z^2"))});
}

}  // namespace

TEST_CASE("valuation examples", "[local-analysis]") {
  CHECK(valuation(fn("1/z^2"), zero) == -2);
  CHECK(valuation(fn("(2-z)/z"), inf) == 0);
  CHECK(valuation(fn("1/(z^2-2)"), PointSpec::roots_of(poly("z^2 - 2"))) == -1);
  CHECK(valuation(fn("(z-1)^3/(z+1)"), PointSpec::at(1)) == 3);
  CHECK(valuation(RationalFunction(), zero) == kInfiniteValuation);
}

TEST_CASE("Newton polygon examples", "[local-analysis]") {
  const NewtonPolygon a = newton_polygon(normalize_monic(op("z^2*D + 1")), zero);
  REQUIRE(a.edges.size() == 1);
  CHECK(a.edges[0].slope == 1);
  CHECK(a.edges[0].length == 1);

  const NewtonPolygon b = newton_polygon(op("D - 1"), inf);
  REQUIRE(b.edges.size() == 1);
  CHECK(b.edges[0].slope == 1);

  const DiffOperator h = op("z*(1-z)*D^2 + (1-2*z)*D");
  for (const auto& p : {zero, PointSpec::at(1), PointSpec::at(2), PointSpec::at(Rational(-1, 3)), inf}) {
    const NewtonPolygon poly_p = newton_polygon(h, p);
    INFO(p.to_string());
    CHECK(poly_p.largest_slope() == 0);
    CHECK(poly_p.order() == 2);
    for (const auto& e : poly_p.edges) CHECK(e.slope == 0);
  }
}

TEST_CASE("Katz rank examples", "[local-analysis]") {
  CHECK(katz_rank(op("z*D"), zero) == 0);
  CHECK(katz_rank(op("z^2*D + 1"), zero) == 1);
  CHECK(katz_rank(op("z*D^2 + (2-z)*D + 3"), inf) == 1);
  CHECK(katz_rank(op("z^3*D^2 + 1"), zero) == Rational(1, 2));
}

TEST_CASE("hull extends from the smallest column", "[local-analysis]") {
  // heights 0, -1, 1: the slope-0 edge has length 1, then slope 2
  const NewtonPolygon p = lower_left_hull({0, -1, 1});
  REQUIRE(p.edges.size() == 2);
  CHECK(p.base_height() == -1);
  CHECK(p.flat_length() == 1);
  CHECK(p.edges[1].slope == 2);
  CHECK(p.vertices.back() == std::pair<int, int>(2, 1));
  // missing middle column
  const NewtonPolygon q = lower_left_hull({0, std::nullopt, 4});
  REQUIRE(q.edges.size() == 1);
  CHECK(q.edges[0].slope == 2);
  CHECK(q.edges[0].length == 2);
}

TEST_CASE("indicial polynomial examples", "[local-analysis]") {
  const IndicialPolynomial k = indicial_polynomial(op("z*D^2 + (2-z)*D + 5"), zero);
  CHECK(k.norm.monic() == poly("z*(z+1)"));
  const auto ex = summarize_exponents(k);
  CHECK(ex.all_rational);
  REQUIRE(ex.rational.size() == 2);
  CHECK(ex.rational[0].root == -1);
  CHECK(ex.rational[1].root == 0);

  const IndicialPolynomial o = indicial_polynomial(op("z*D^2 + (2-z)*D + 5"), PointSpec::at(3));
  CHECK(o.norm.monic() == poly("z*(z-1)"));

  const IndicialPolynomial g = indicial_polynomial(gauss(Rational(1, 2), Rational(1, 2), 1), zero);
  CHECK(g.norm.monic() == poly("z^2"));
  const IndicialPolynomial gi = indicial_polynomial(gauss(Rational(1, 2), Rational(1, 2), 1), inf);
  CHECK(gi.norm.monic() == poly("(z - 1/2)^2"));

  CHECK_THROWS_AS(indicial_polynomial(op("z^2*D + 1"), zero), Error);
}

TEST_CASE("indicial polynomial at an algebraic orbit", "[local-analysis]") {
  // (z^2 - 2) D + 1 at z = a: exponent -1/(2a), so the norm is lambda^2 - 1/8
  const DiffOperator L = op("(z^2-2)*D + 1");
  const PointSpec orbit = PointSpec::roots_of(poly("z^2 - 2"));
  const IndicialPolynomial ind = indicial_polynomial(L, orbit);
  CHECK(ind.modulus == poly("z^2 - 2"));
  CHECK(ind.norm.monic() == poly("z^2 - 1/8"));
  const auto ex = summarize_exponents(ind);
  CHECK_FALSE(ex.all_rational);
  CHECK(ex.sum == 0);
  CHECK(ex.modulus_bound >= Rational(1, 3));
  CHECK(is_apparent(L, orbit) == Apparent::no);

  // both routes agree at rational points
  const DiffOperator K = op("z*D^2 + (2-z)*D + 5");
  CHECK(indicial_by_leading_coefficients(K, zero).norm.monic() == indicial_polynomial(K, zero).norm.monic());
}

TEST_CASE("apparent singularity examples", "[local-analysis]") {
  CHECK(is_apparent(op("z*D^2 - D"), zero) == Apparent::yes);
  CHECK(power_series_kernel_dimension(op("z*D^2 - D"), 0, 2) == 2);

  const DiffOperator L = log_operator();
  CHECK(L == op("(z^3 - 2*z)*D^2 - (3*z^2 - 2)*D + 4*z"));
  CHECK(summarize_exponents(indicial_polynomial(L, zero)).rational.size() == 2);
  CHECK(is_apparent(L, zero) == Apparent::no);
  CHECK(power_series_kernel_dimension(L, 0, 2) == 1);
  CHECK(is_apparent(L, PointSpec::roots_of(poly("z^2 - 2"))) == Apparent::undecided_conservative);

  CHECK(is_apparent(op("z^2*D + 1"), zero) == Apparent::no);
  CHECK(is_apparent(op("z*D^2 + (2-z)*D + 5"), zero) == Apparent::no);
  CHECK_THROWS_AS(is_apparent(op("z*D^2 - D"), PointSpec::at(1)), Error);
  CHECK_THROWS_AS(is_apparent(op("z*D^2 - D"), inf), Error);
}

TEST_CASE("apparent test with a shifted point and a doubled window", "[local-analysis]") {
  // (z-1) D^2 - 3 D: solutions 1 and (z-1)^4, apparent at 1
  const DiffOperator L = op("(z-1)*D^2 - 3*D");
  CHECK(is_apparent(L, PointSpec::at(1)) == Apparent::yes);
  CHECK(power_series_kernel_dimension(L, 1, 4, 4) == 2);
  // z D^2 - 2 D + 1: exponents {0, 3}, the log obstruction appears at z^3
  const DiffOperator M = op("z*D^2 - 2*D + 1");
  CHECK(is_apparent(M, zero) == Apparent::no);
  CHECK(power_series_kernel_dimension(M, 0, 3) == power_series_kernel_dimension(M, 0, 3, 3));
}

TEST_CASE("census examples", "[local-analysis]") {
  const GlobalCensus k = global_census(op("z*D^2 + (2-z)*D + 3"));
  CHECK(k.N_max == 1);
  CHECK(k.S == 1);
  CHECK(k.S_relaxed == 0);
  CHECK_FALSE(k.E_fuchsian.has_value());
  REQUIRE(k.finite_singularities.size() == 1);
  CHECK(k.finite_singularities[0].classification == Classification::regular_singular);
  CHECK(k.finite_singularities[0].relaxed_apparent);
  CHECK(k.infinity_report.classification == Classification::irregular);
  CHECK(k.sing_count_total == 1);

  const GlobalCensus c = global_census(op("D^2 - 1"));
  CHECK(c.finite_singularities.empty());
  CHECK(c.S == 0);
  CHECK(c.N_max == 1);

  const GlobalCensus g = global_census(gauss(Rational(1, 2), Rational(1, 2), 1));
  CHECK(g.S == 2);
  CHECK(g.N_max == 0);
  REQUIRE(g.E_fuchsian.has_value());
  CHECK(*g.E_fuchsian == Rational(1, 2));
  CHECK(g.E_provenance == "exact-rational");
  CHECK(g.fuchsian());

  // orbit clusters count with their size; irrational exponents use the Cauchy bound
  const GlobalCensus o = global_census(op("(z^2-2)*D + 1"));
  CHECK(o.S == 2);
  CHECK(o.sing_count_total == 2);
  REQUIRE(o.E_fuchsian.has_value());
  CHECK(o.E_provenance == "cauchy-bound");

  // the same census sequentially
  const GlobalCensus s = global_census(gauss(Rational(1, 2), Rational(1, 2), 1), {false});
  CHECK(s.S == g.S);
  CHECK(*s.E_fuchsian == *g.E_fuchsian);
}

TEST_CASE("singular points split orbits by local behaviour", "[local-analysis]") {
  // (z^2-2)(z^2-3) is squarefree and reducible; with nothing to tell its
  // roots apart it stays one cluster of four points
  const auto pts = singular_points(op("(z^2-2)*(z^2-3)*D + z^2 - 1"));
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].size() == 4);
  // numerator (z^2-2) on the (z^2-2)(z^2-3) cluster forces a split
  const auto split = singular_points(op("(z^2-2)*(z^2-3)*D^2 + (z^2-2)*D + 1"));
  REQUIRE(split.size() == 2);
  CHECK(split[0].orbit != split[1].orbit);
  const auto rational = singular_points(op("z^2*(z-1)*(2*z+1)*D + 1"));
  REQUIRE(rational.size() == 3);
  CHECK(rational[0].value == Rational(-1, 2));
}
