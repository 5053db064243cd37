#include "catch_amalgamated.hpp"

#include "dopb/theta_form.hpp"
#include "support.hpp"

using namespace dopb;
using testing::fn;
using testing::Gen;
using testing::op;

namespace {

Polynomial kummer_h(int k) {
  // sum_l C(k,l) (-z)^l / (l+1)!
  std::vector<Rational> c;
  Integer fact = 1;
  for (int l = 0; l <= k; ++l) {
    fact *= l + 1;
    Rational t(detail::binomial(k, l) * (l % 2 ? -1 : 1));
    c.push_back(t / Rational(fact));
  }
  return Polynomial(std::move(c));
}

DiffOperator log_derivative_factor(const Polynomial& h) {
  return op("D") - DiffOperator::scalar(RationalFunction(h.derivative(), h));
}

}  // namespace

TEST_CASE("normalize_monic examples", "[ore-operator]") {
  CHECK(normalize_monic(op("z*D^2 + (2-z)*D + 3")) == op("D^2 + (2-z)/z*D + 3/z"));
  CHECK(normalize_monic(op("D")) == op("D"));
  CHECK(normalize_monic(op("2*D + 2*z")) == op("D + z"));
  CHECK_THROWS_AS(normalize_monic(DiffOperator()), Error);
}

TEST_CASE("multiply examples", "[ore-operator]") {
  CHECK(op("D") * op("z*D") == op("z*D^2 + D"));
  CHECK(op("D - 1") * op("D + 1") == op("D^2 - 1"));
  CHECK(op("D + 1") * op("D - 1") == op("D^2 - 1"));
  CHECK(op("D") * op("z") - op("z") * op("D") == op("1"));
  CHECK(op("D^3") * op("1/z") == op("1/z*D^3 - 3/z^2*D^2 + 6/z^3*D - 6/z^4"));
}

TEST_CASE("right_divmod examples", "[ore-operator]") {
  auto d = right_divmod(op("D^2"), op("D - 1"));
  CHECK(d.quotient == op("D + 1"));
  CHECK(d.remainder == op("1"));

  d = right_divmod(op("D^2 - 1"), op("D - 1"));
  CHECK(d.quotient == op("D + 1"));
  CHECK(d.remainder.is_zero());
  CHECK(d.remainder.order() == -1);

  const DiffOperator M = log_derivative_factor(kummer_h(2));
  CHECK(kummer_h(2) == testing::poly("1 - z + z^2/6"));
  d = right_divmod(op("z*D^2 + (2-z)*D + 2"), M);
  CHECK(d.remainder.is_zero());
  CHECK(d.quotient * M == op("z*D^2 + (2-z)*D + 2"));

  try {
    right_divmod(op("D"), DiffOperator());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::division_by_zero);
  }
}

TEST_CASE("adjoint examples", "[ore-operator]") {
  CHECK(adjoint(op("D")) == op("-D"));
  CHECK(adjoint(op("z*D")) == op("-z*D - 1"));
  CHECK(adjoint(op("z*D^2 + D")) == op("z*D^2 + D"));
  // (N M)* = M* N* for N = D, M = z D
  CHECK(adjoint(op("D") * op("z*D")) == adjoint(op("z*D")) * adjoint(op("D")));
}

TEST_CASE("shift_point examples", "[ore-operator]") {
  CHECK(shift_point(op("D"), 1) == op("D"));
  CHECK(shift_point(op("(z-1)*D"), 1) == op("z*D"));
  CHECK(shift_point(op("z*D"), 1) == op("(z+1)*D"));
}

TEST_CASE("invert_variable examples", "[ore-operator]") {
  CHECK(invert_variable(op("D")) == op("-z^2*D"));
  CHECK(invert_variable(op("z*D")) == op("-z*D"));
  CHECK(invert_variable(op("D - 1")) == op("-z^2*D - 1"));
  CHECK(invert_variable(invert_variable(op("z*D^2 + (2-z)*D + 3"))) == op("z*D^2 + (2-z)*D + 3"));
}

TEST_CASE("theta form examples", "[ore-operator]") {
  const PointSpec zero = PointSpec::at(0);
  auto tf = to_theta_form(op("z*D^2"), zero, 3);
  REQUIRE(tf.order() == 2);
  CHECK(tf.exact[2] == fn("1/z"));
  CHECK(tf.exact[1] == fn("-1/z"));
  CHECK(tf.exact[0].is_zero());
  CHECK(tf.coefficients[2].valuation == -1);

  tf = to_theta_form(op("z*D"), zero, 2);
  CHECK(tf.exact[1] == fn("1"));
  CHECK(tf.exact[0].is_zero());

  tf = to_theta_form(op("D"), zero, 2);
  CHECK(tf.exact[1] == fn("1/z"));

  // at infinity theta flips sign
  tf = to_theta_form(op("z*D"), PointSpec::infinity(), 2);
  CHECK(tf.exact[1] == fn("-1"));

  CHECK_THROWS_AS(to_theta_form(op("D"), zero, 0), Error);
  CHECK_THROWS_AS(to_theta_form(op("D"), PointSpec::roots_of(testing::poly("z^2 - 2")), 2), Error);
}

TEST_CASE("degree profile examples", "[ore-operator]") {
  const DegreeProfile m = degree_profile(log_derivative_factor(kummer_h(2)));
  CHECK(m.order == 1);
  CHECK(m.degree_z == 2);
  CHECK(degree_profile(op("D^5")).degree_z == 0);
  const DegreeProfile k = degree_profile(op("z*D^2 + (2-z)*D + 3"));
  CHECK(k.order == 2);
  CHECK(k.degree_z == 1);
  CHECK(k.denominator_degree == 1);
}

TEST_CASE("polynomial form clears denominators to primitive integers", "[ore-operator]") {
  const PolynomialForm pf = polynomial_form(op("D^2 + (2-z)/z*D + 3/z"));
  REQUIRE(pf.order() == 2);
  CHECK(pf.coeffs[2] == testing::poly("z"));
  CHECK(pf.coeffs[1] == testing::poly("2 - z"));
  CHECK(pf.coeffs[0] == testing::poly("3"));
  CHECK(pf.degree() == 1);
  const PolynomialForm neg = polynomial_form(op("-1/2*z*D + 1/3"));
  CHECK(neg.coeffs[1] == testing::poly("3*z"));
  CHECK(neg.coeffs[0] == testing::poly("-2"));
}

TEST_CASE("operator action", "[ore-operator]") {
  CHECK(op("z*D - 1").apply(fn("z")).is_zero());
  CHECK(op("D^2 + 1/z*D").apply(fn("z^2")) == fn("4"));
  CHECK(testing::act(op("D^2 + 1/z*D"), fn("z^2")) == fn("4"));
}

TEST_CASE("parser examples and errors", "[ore-operator][text]") {
  const DiffOperator k = op("z*D^2 + (2-z)*D + 3");
  CHECK(k.order() == 2);
  CHECK(k.coeff(1) == fn("2 - z"));
  CHECK(op("D") == DiffOperator::derivation());
  const DiffOperator r = op("(1/2)*D - z^2");
  CHECK(r.order() == 1);
  CHECK(r.coeff(1) == RationalFunction(Rational(1, 2)));
  CHECK(op("-D^2") == DiffOperator::term(-1, 2));
  CHECK(parse_operator("x*D", "x").var() == "x");

  auto code_of = [](const std::string& text) {
    try {
      parse_operator(text);
    } catch (const Error& e) {
      return std::string(error_code_name(e.code())) + ":" + e.what();
    }
    return std::string("ok");
  };
  CHECK(code_of("z*D +").find("parse-error") != std::string::npos);
  CHECK(code_of("y*D").find("unknown symbol 'y'") != std::string::npos);
  CHECK(code_of("1/D").find("positive order") != std::string::npos);
  CHECK(code_of("1/(z-z)").find("division by zero") != std::string::npos);
  CHECK(code_of("(D").find("position") != std::string::npos);
}

TEST_CASE("printer output", "[ore-operator][text]") {
  CHECK(format_operator(op("D-1") * op("D+1")) == "D^2 - 1");
  CHECK(format_operator(op("z*D^2 + (2-z)*D + 3")) == "z*D^2 + (-z + 2)*D + 3");
  CHECK(format_operator(op("-1/2*z*D - z + 1")) == "-1/2*z*D - z + 1");
  CHECK(format_operator(op("D + 1/z")) == "D + (1)/(z)");
  CHECK(format_operator(DiffOperator()) == "0");
}

TEST_CASE("printer and parser round-trip", "[ore-operator][text][property]") {
  Gen g(3);
  for (int i = 0; i < 500; ++i) {
    const DiffOperator L = g.coin() ? g.polynomial_operator(g.integer(0, 3), 3) : g.rational_operator(g.integer(0, 3), 2, 2);
    const std::string text = format_operator(L);
    INFO(text);
    CHECK(parse_operator(text) == L);
  }
}

TEST_CASE("theta form round-trip on the window", "[ore-operator][property]") {
  Gen g(21);
  for (int i = 0; i < 60; ++i) {
    const DiffOperator L = g.rational_operator(g.integer(1, 3), 3, 2);
    const PointSpec p = PointSpec::at(g.rational(2, 2));
    const int window = 6;
    const ThetaForm tf = to_theta_form(L, p, window);
    const auto back = theta_form_to_derivation_windows(tf, window);
    const DiffOperator local = localize(L, p);
    REQUIRE(back.size() == static_cast<std::size_t>(L.order()) + 1);
    for (int j = 0; j <= L.order(); ++j) {
      const LaurentWindow direct = laurent_window(local.coeff(j), window + 8);
      const LaurentWindow& w = back[static_cast<std::size_t>(j)];
      if (direct.is_zero()) {
        for (int e = w.valuation; !w.is_zero() && e < w.valuation + window; ++e) CHECK(w.at(e) == 0);
        continue;
      }
      REQUIRE(!w.is_zero());
      CHECK(w.valuation <= direct.valuation);
      for (int e = w.valuation; e < w.valuation + window; ++e) CHECK(w.at(e) == direct.at(e));
    }
  }
}
