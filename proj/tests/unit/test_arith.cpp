#include <doctest.h>

#include <cmath>

#include "exactsos/compositum.hpp"
#include "exactsos/parser.hpp"
#include "exactsos/polyalg.hpp"
#include "../test_support.hpp"

using namespace exactsos;

TEST_CASE("rational parsing and printing round-trip") {
  CHECK(parse_rational("-81/10") == Rational(-81, 10));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(to_string(Rational(81, 10)) == "81/10");
  CHECK(to_string(Rational(-4)) == "-4");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
}

TEST_CASE("doubles convert to rationals exactly") {
  CHECK(rational_from_double(0.5) == Rational(1, 2));
  CHECK(rational_from_double(-3.25) == Rational(-13, 4));
  const double x = 0.1;
  CHECK(rational_from_double(x).get_d() == x);
  CHECK(rational_from_double(x).get_den() == Integer(1) << 55);
}

TEST_CASE("univariate arithmetic, gcd and division") {
  const UniPoly a = parse_univariate("Z^3-2");
  const UniPoly b = parse_univariate("Z-1");
  const auto [q, r] = UniPoly::divmod(a, b);
  CHECK(q == parse_univariate("Z^2+Z+1"));
  CHECK(r == UniPoly::constant(-1));
  CHECK(q * b + r == a);
  const UniPoly p = parse_univariate("(Z-1)^2*(Z+2)");
  CHECK(gcd(p, p.derivative()) == parse_univariate("Z-1"));
  CHECK(squarefree_part(p) == parse_univariate("(Z-1)*(Z+2)"));
}

TEST_CASE("Sturm counting and root isolation") {
  CHECK(real_root_count(parse_univariate("Z^2-2")) == 2);
  CHECK(real_root_count(parse_univariate("Z^2+1")) == 0);
  CHECK(real_root_count(parse_univariate("Z^3-2")) == 1);
  // Two real roots, as stated for the quartic of the ternary example.
  CHECK(real_root_count(parse_univariate("50Z^4+28Z^3-Z^2+23Z-8")) == 2);
  const UniPoly m = parse_univariate("Z^2-2");
  const auto roots = isolate_real_roots(m);
  REQUIRE(roots.size() == 2);
  const Interval fine = refine_root(m, roots[1], Rational(1, 1000000000));
  CHECK(fine.lo.get_d() <= std::sqrt(2.0));
  CHECK(fine.hi.get_d() >= std::sqrt(2.0) - 1e-12);
  CHECK((fine.hi - fine.lo) <= Rational(1, 1000000000));
}

TEST_CASE("number field arithmetic in Q(2^(1/3))") {
  const FieldPtr k = NumberField::make(parse_univariate("Z^3-2"), "a", 0);
  const AlgebraicNumber a = AlgebraicNumber::generator(k);
  CHECK(a * a * a == AlgebraicNumber(2));
  const AlgebraicNumber x = a * a - a + 3;
  CHECK(x * x.inverse() == AlgebraicNumber(1));
  // Power sums of the roots of Z^3 - 2: p0 = 3, p1 = p2 = 0.
  CHECK(k->power_traces() == std::vector<Rational>{3, 0, 0});
  CHECK(nf_trace(a * a * a) == 6);
  CHECK(sign(a - Rational(126, 100)) < 0);
  CHECK(sign(a - Rational(125, 100)) > 0);
  CHECK(to_double(a) == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
}

TEST_CASE("embedding selection follows the requested real root") {
  const FieldPtr lo = NumberField::make(parse_univariate("Z^2-2"), "a", 0);
  const FieldPtr hi = NumberField::make(parse_univariate("Z^2-2"), "a", 1);
  CHECK(sign(AlgebraicNumber::generator(lo)) < 0);
  CHECK(sign(AlgebraicNumber::generator(hi)) > 0);
}

TEST_CASE("multivariate arithmetic and exact division") {
  const VarList v = make_vars({"x", "y"});
  const QPoly x = QPoly::variable(v, 0), y = QPoly::variable(v, 1);
  const QPoly p = (x + y).pow(3);
  CHECK(p == x * x * x + Rational(3) * x * x * y + Rational(3) * x * y * y + y * y * y);
  const auto q = divide_exact(p, x + y);
  REQUIRE(q.has_value());
  CHECK(*q == (x + y) * (x + y));
  CHECK_FALSE(divide_exact(p, x - y).has_value());
}

TEST_CASE("resultant and multivariate gcd") {
  const VarList v = make_vars({"x", "y"});
  const QPoly x = QPoly::variable(v, 0), y = QPoly::variable(v, 1);
  // Res_y(x - y, y^2 - 2) = x^2 - 2 up to sign.
  const QPoly r = resultant_in(x - y, y * y - QPoly::constant(v, 2), 1);
  CHECK((r == x * x - QPoly::constant(v, 2) || r == QPoly::constant(v, 2) - x * x));
  const QPoly g = mv_gcd((x + y) * (x - y), (x + y) * (x + y) * y);
  CHECK(g == x + y);
  CHECK(mv_gcd(x * x - y * y, x * y + QPoly::constant(v, 1)).is_constant());
}

TEST_CASE("parser: headers, juxtaposition and errors") {
  const auto doc = parse_polynomial_document("field: a, minpoly: Z^3-2\nvars: x, y, z\n2a^2x^2z - yz^2 + 3/2*x*y*z\n");
  REQUIRE(doc.field);
  CHECK(doc.field->degree() == 3);
  CHECK(*doc.poly.vars() == std::vector<std::string>{"x", "y", "z"});
  CHECK(doc.poly.term_count() == 3);
  const VarList v = parse_variable_list("x, y, z");
  CHECK(parse_polynomial("xyz", v) == parse_polynomial("x*y*z", v));
  CHECK(parse_polynomial("(x+y)^2", v) == parse_polynomial("x^2+2*x*y+y^2", v));
  CHECK(parse_polynomial("x**2/4", v) == parse_polynomial("1/4x^2", v));
  CHECK(parse_polynomial("0.5x-1.25y", v) == parse_polynomial("1/2x-5/4y", v));
  CHECK_THROWS_AS(parse_polynomial("x+", v), Error);
  CHECK_THROWS_AS(parse_polynomial("x/y", v), Error);
  CHECK_THROWS_AS(parse_polynomial("q^2", v), Error);
  const auto inferred = parse_polynomial_document("x1^2yz^2 + x2z^4 - a*y^4");
  CHECK(*inferred.poly.vars() == std::vector<std::string>{"a", "x1", "x2", "y", "z"});
  CHECK(inferred.poly.degree() == 5);
}

TEST_CASE("compositum of Q(sqrt 2) and Q(sqrt 3)") {
  const FieldPtr k2 = NumberField::make(parse_univariate("Z^2-2"), "a", 1);
  const FieldPtr k3 = NumberField::make(parse_univariate("Z^2-3"), "b", 1);
  const Compositum c = compositum(k2, k3);
  REQUIRE(c.field);
  CHECK(c.field->degree() == 4);
  CHECK(c.first * c.first == AlgebraicNumber(2));
  CHECK(c.second * c.second == AlgebraicNumber(3));
  // The designated embedding matches the positive roots.
  CHECK(to_double(c.first) == doctest::Approx(std::sqrt(2.0)));
  CHECK(to_double(c.second) == doctest::Approx(std::sqrt(3.0)));
  const AlgebraicNumber x = AlgebraicNumber::generator(k2) + 5;
  CHECK(to_double(embed(x, c.first)) == doctest::Approx(std::sqrt(2.0) + 5));
}
