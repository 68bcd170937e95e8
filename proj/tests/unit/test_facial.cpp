#include <doctest.h>

#include "exactsos/facial.hpp"
#include "../test_support.hpp"

using namespace exactsos;
using namespace exactsos::testing;

namespace {

const Matrix<Rational> kTernaryUnique{{10, 3, -11, 15, 3, 2},   {3, 9, -15, 0, 0, 6},   {-11, -15, 29, -10, -2, -10},
                                      {15, 0, -10, 25, 5, 0},   {3, 0, -2, 5, 1, 0},    {2, 6, -10, 0, 0, 4}};

struct Ternary {
  QPoly f = load_poly("ternary_quartic.poly");
  std::vector<ZeroPoint> zeros = load_zeros("ternary_quartic.zeros", f);
};

}  // namespace

TEST_CASE("zero points are checked exactly") {
  const VarList v = make_vars({"x", "y"});
  const QPoly f = parse_polynomial("x^2-2y^2", v);
  const FieldPtr k = NumberField::make(parse_univariate("Z^2-2"), "a", 1);
  const AlgebraicNumber a = AlgebraicNumber::generator(k);
  CHECK_NOTHROW(make_zero_point(f, {a, AlgebraicNumber(1)}, k));
  CHECK_THROWS_AS(make_zero_point(f, {AlgebraicNumber(1), AlgebraicNumber(1)}), Error);
  CHECK_THROWS_AS(make_zero_point(f, {a}, k), Error);
  const auto zs = parse_zero_file("minpoly: Z^2-2 ; root: 1 ; coords: a, 1 ; label: p\n", f);
  REQUIRE(zs.size() == 1);
  CHECK(zs[0].label == "p");
  CHECK_FALSE(zs[0].is_rational());
  CHECK_THROWS_AS(parse_zero_file("coords: 0, 0\n", f), Error);
}

TEST_CASE("trace vector of the ternary quartic zero") {
  Ternary t;
  REQUIRE(t.zeros.size() == 1);
  const GramPencil<Rational> p = build_pencil(t.f);
  const auto tc = trace_constraint(p.basis(), t.zeros[0]);
  REQUIRE(tc.has_value());
  const std::vector<Rational> expected{Rational(4),          Rational(-14, 25),  Rational(53, 10),
                                       Rational(221, 625),   Rational(-396, 125), Rational(1209, 100)};
  CHECK(tc->vector == expected);
}

TEST_CASE("plain zero on the ternary quartic leaves dimension 3, rank 5") {
  Ternary t;
  FacialReducer r(build_pencil(t.f));
  r.add_zeros(t.zeros, ZeroMode::Plain);
  CHECK_FALSE(r.is_rational());
  CHECK(r.dimension() == 3);
  CHECK(r.rank() == 5);
}

TEST_CASE("trace constraint on the ternary quartic gives the unique rational matrix") {
  Ternary t;
  FacialReducer r(build_pencil(t.f));
  r.add_zeros(t.zeros, ZeroMode::Trace);
  REQUIRE(r.is_rational());
  CHECK(r.dimension() == 0);
  CHECK(r.rational().constant() == kTernaryUnique);
}

TEST_CASE("conjugate constraints and rational forcing agree on rational Gram matrices") {
  Ternary t;
  FacialReducer conj(build_pencil(t.f));
  conj.add_zeros(t.zeros, ZeroMode::Conjugate);
  FacialReducer forced(build_pencil(t.f));
  forced.add_zeros(t.zeros, ZeroMode::Plain);
  forced.force_rational();
  REQUIRE(conj.is_rational());
  REQUIRE(forced.is_rational());
  REQUIRE(conj.dimension() == 0);
  REQUIRE(forced.dimension() == 0);
  CHECK(conj.rational().constant() == forced.rational().constant());
  CHECK(conj.rational().constant() == kTernaryUnique);
}

TEST_CASE("diagonal ghosts: a zero diagonal entry forces its row to vanish") {
  const VarList v = make_vars({"x", "y"});
  // No y^4 term: W(y^2, y^2) = 0 identically.
  const GramPencil<Rational> p = build_pencil(parse_polynomial("x^4+x^2y^2", v));
  const auto g = diag_ghosts(p);
  REQUIRE(g.size() == 1);
  CHECK(g[0].vector == std::vector<Rational>{0, 0, 1});
  const auto q = apply_constraints(p, {g[0].vector});
  CHECK(q.num_params() == 0);
  CHECK(q.constant() == Matrix<Rational>{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  // With an x*y^3 term the row cannot vanish: no Gram matrix is PSD.
  const GramPencil<Rational> bad = build_pencil(parse_polynomial("x^4+x^2y^2+x*y^3", v));
  CHECK(apply_constraints(bad, {diag_ghosts(bad)[0].vector}).is_empty());
}

TEST_CASE("minor ghosts: a singular parameter-free 2x2 block yields its kernel") {
  const VarList v = make_vars({"x", "y"});
  const MonomialBasis b = monomial_basis(v, 2);
  const Matrix<Rational> c{{1, 1, 0}, {1, 1, 0}, {0, 0, 0}};
  const Matrix<Rational> d{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}};
  const GramPencil<Rational> p(b, c, {d}, {"t"});
  const auto g = minor_ghosts(p);
  REQUIRE_FALSE(g.empty());
  const auto& u = g[0].vector;
  CHECK(u[2] == 0);
  CHECK(u[0] == -u[1]);
  const auto q = apply_constraints(p, {u});
  CHECK(q.num_params() == 0);
  CHECK(satisfied_identically(q, u));
}

TEST_CASE("parameter equations restrict the pencil") {
  const VarList v = make_vars({"x", "y"});
  const GramPencil<Rational> p = build_pencil(parse_polynomial("10x^4+2x^3y+27x^2y^2-24xy^3+5y^4", v));
  // a - 3 = 0.
  const GramPencil<Rational> q = apply_parameter_equations(p, Matrix<Rational>{{1, -3}});
  CHECK(q.num_params() == 0);
  CHECK(q.constant() == p.evaluate({Rational(3)}));
}

TEST_CASE("Motzkin with plain zeros reaches rank 4 without parameters") {
  const QPoly f = load_poly("motzkin.poly");
  FacialReducer r(build_pencil(f));
  CHECK(r.dimension() == 27);
  CHECK(r.rank() == 10);
  r.add_zeros(load_zeros("motzkin.zeros", f), ZeroMode::Plain);
  r.ghosts(true);
  CHECK(r.dimension() == 0);
  CHECK(r.rank() == 4);
}
