#include <doctest.h>

#include "exactsos/descent.hpp"
#include "../test_support.hpp"

using namespace exactsos;
using namespace exactsos::testing;

TEST_CASE("conjugate product with a rational field is the identity") {
  const VarList v = make_vars({"x", "y"});
  const NfPoly p1 = parse_nf_polynomial("x+2y", v), p2 = parse_nf_polynomial("x-y", v);
  const ConjugateProduct cp = conjugate_product(p1, p2, nullptr);
  CHECK(cp.degree == 1);
  CHECK(cp.P1 == parse_polynomial("x+2y", v));
  CHECK(cp.P2 == parse_polynomial("x-y", v));
}

TEST_CASE("conjugate product of x + I y over a cubic field is (x + I y)^3") {
  const FieldPtr k = NumberField::make(parse_univariate("Z^3-2"), "a");
  const VarList v = make_vars({"x", "y"});
  const ConjugateProduct cp = conjugate_product(parse_nf_polynomial("x", v, k), parse_nf_polynomial("y", v, k), k);
  CHECK(cp.P1 == parse_polynomial("x^3-3x*y^2", v));
  CHECK(cp.P2 == parse_polynomial("3x^2*y-y^3", v));
  CHECK(cp.f.pow(3) == cp.P1 * cp.P1 + cp.P2 * cp.P2);
}

TEST_CASE("conjugate product does not depend on the scaling of the minimal polynomial") {
  const FieldPtr k1 = NumberField::make(parse_univariate("Z^3-Z-1"), "a");
  const FieldPtr k2 = NumberField::make(parse_univariate("3Z^3-3Z-3"), "a");
  const VarList v = make_vars({"x", "y"});
  // p1 = x + a y, p2 = a x: f = x^2 + 2a xy + a^2 (x^2 + y^2) is not rational.
  CHECK_THROWS_AS(conjugate_product(parse_nf_polynomial("x+a*y", v, k1), parse_nf_polynomial("a*x", v, k1), k1),
                  Error);
  const auto c1 = conjugate_product(parse_nf_polynomial("x", v, k1), parse_nf_polynomial("y", v, k1), k1);
  const auto c2 = conjugate_product(parse_nf_polynomial("x", v, k2), parse_nf_polynomial("y", v, k2), k2);
  CHECK(c1.P1 == c2.P1);
  CHECK(c1.P2 == c2.P2);
}

TEST_CASE("even-degree fields are rejected") {
  const FieldPtr k = NumberField::make(parse_univariate("Z^2-2"), "a", 1);
  const VarList v = make_vars({"x"});
  CHECK_THROWS_AS(conjugate_product(parse_nf_polynomial("x", v, k), parse_nf_polynomial("x", v, k), k), Error);
}

TEST_CASE("two-squares descent: gcd extraction from (x + I y)^3") {
  const VarList v = make_vars({"x", "y"});
  const QPoly f = parse_polynomial("x^2+y^2", v);
  const DescentResult r = two_square_descent(f, parse_polynomial("x^3-3x*y^2", v), parse_polynomial("3x^2*y-y^3", v), 3);
  REQUIRE(r.complete);
  CHECK_FALSE(r.fast_path);
  CHECK(r.q1 * r.q1 == parse_polynomial("x^2", v));
  CHECK(r.q2 * r.q2 == parse_polynomial("y^2", v));
}

TEST_CASE("two-squares descent with a self-conjugate factor") {
  // G = (x + I y)^3 (x^2 + 2 y^2)^3 and f = (x^2 + y^2)(x^2 + 2 y^2)^2: f does
  // not divide P1, so the gcd path has to split off x^2 + 2 y^2 as a square.
  const VarList v = make_vars({"x", "y"});
  const QPoly x = QPoly::variable(v, 0), y = QPoly::variable(v, 1);
  const QPoly r2 = x * x + Rational(2) * y * y;
  const QPoly f = (x * x + y * y) * r2 * r2;
  const QPoly P1 = (x * x * x - Rational(3) * x * y * y) * r2.pow(3);
  const QPoly P2 = (Rational(3) * x * x * y - y * y * y) * r2.pow(3);
  const DescentResult r = two_square_descent(f, P1, P2, 3);
  REQUIRE(r.complete);
  CHECK_FALSE(r.fast_path);
  CHECK(r.q1 * r.q1 + r.q2 * r.q2 == f);
  CHECK(r.q1.degree() == 3);
}

TEST_CASE("descent with d = 1 returns the inputs") {
  const VarList v = make_vars({"x", "y"});
  const QPoly p = parse_polynomial("x+y", v), q = parse_polynomial("x-3y", v);
  const DescentResult r = two_square_descent(p * p + q * q, p, q, 1);
  REQUIRE(r.complete);
  CHECK(r.fast_path);
  CHECK(r.q1 == p);
  CHECK(r.q2 == q);
  CHECK_THROWS_AS(two_square_descent(p * p, p, q, 1), Error);
}

TEST_CASE("polynomial square roots") {
  const VarList v = make_vars({"x", "y", "z"});
  const QPoly a = parse_polynomial("2x^2-3/2*x*y+z^2-y*z", v);
  const auto r = polynomial_sqrt(a * a);
  REQUIRE(r.has_value());
  CHECK(*r * *r == a * a);
  CHECK_FALSE(polynomial_sqrt(a * a + parse_polynomial("x^4", v)).has_value());
  CHECK_FALSE(polynomial_sqrt(parse_polynomial("2x^2", v)).has_value());
}

TEST_CASE("three-squares generator: constant inputs") {
  const VarList v = make_vars({"x"});
  auto c = [&](long k) { return QPoly::constant(v, Rational(k)); };
  const ThreeSquares g = gen_three_squares(c(0), c(1), c(0), c(0), c(0), c(1), c(0));
  CHECK(g.delta == c(1));
  // a1 = -1, a2 = -1/2 with the denominator 2 delta = 2.
  CHECK(g.a1_num == c(-2));
  CHECK(g.a2_num == c(-1));
  // Unscaled: (a - 1)^2 + (a^2 - 1/2)^2 = 5/4; scaled by (2 delta)^2 = 4.
  CHECK(g.f == c(5));
  CHECK_THROWS_AS(gen_three_squares(c(0), c(1), c(1), c(0), c(1), c(1), c(0)), Error);
}

TEST_CASE("three-squares generator output is rational for random inputs") {
  std::mt19937_64 rng(17);
  const VarList v = make_vars({"x", "y"});
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<QPoly> in;
    for (int i = 0; i < 7; ++i) in.push_back(random_form(v, 1, rng, 0.8));
    const QPoly delta = in[1] * in[5] - in[2] * in[4];
    if (delta.is_zero()) continue;
    const ThreeSquares g = gen_three_squares(in[0], in[1], in[2], in[3], in[4], in[5], in[6]);
    const NfPoly sum = g.p1 * g.p1 + g.p2 * g.p2 + g.p3 * g.p3;
    for (const auto& [e, c] : sum.terms()) CHECK(c.is_rational());
    CHECK(lift(g.f) == sum);
    ++checked;
  }
  CHECK(checked > 80);
}
