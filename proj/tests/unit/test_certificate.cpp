#include <doctest.h>

#include "exactsos/certificate.hpp"
#include "../test_support.hpp"

using namespace exactsos;
using namespace exactsos::testing;

namespace {

// PSD iff every principal minor is nonnegative.
bool psd_by_minors(const Matrix<Rational>& m) {
  const size_t n = m.rows();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    if (bareiss_determinant(m.principal(idx)) < 0) return false;
  }
  return true;
}

Rational quad(const Matrix<Rational>& m, const std::vector<Rational>& w) {
  Rational s = 0;
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) s += w[i] * m(i, j) * w[j];
  }
  return s;
}

Matrix<Rational> random_symmetric(std::mt19937_64& rng, size_t n, int kind) {
  Matrix<Rational> m(n, n);
  if (kind == 0) {
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i; j < n; ++j) m(i, j) = m(j, i) = random_rational(rng, 6, 3);
    }
    return m;
  }
  // B^T B with B of random rank, optionally perturbed on one diagonal entry.
  std::uniform_int_distribution<size_t> rk(0, n);
  const size_t r = rk(rng);
  Matrix<Rational> b(r, n);
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < n; ++j) b(i, j) = random_rational(rng, 3, 2);
  }
  m = b.transpose() * b;
  if (kind == 2) m(n - 1, n - 1) -= Rational(1, 7);
  return m;
}

}  // namespace

TEST_CASE("best rational approximation under a denominator bound") {
  CHECK(best_rational(3.141592653589793, 1000) == Rational(355, 113));
  CHECK(best_rational(3.141592653589793, 100) == Rational(311, 99));
  CHECK(best_rational(0.333333, 100) == Rational(1, 3));
  CHECK(best_rational(-0.75, 3) == Rational(-2, 3));
  CHECK(best_rational(2.6, 1) == Rational(3));
  CHECK(best_rational(0.5, 10) == Rational(1, 2));
  CHECK_THROWS_AS(best_rational(1.0, 0), Error);
  CHECK(round_params({0.25, -1.5}, 10) == std::vector<Rational>{Rational(1, 4), Rational(-3, 2)});
}

TEST_CASE("LDL round-trip and PSD dichotomy on random rational matrices") {
  std::mt19937_64 rng(99);
  int psd_count = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const size_t n = 1 + trial % 6;
    const Matrix<Rational> m = random_symmetric(rng, n, trial % 3);
    const auto res = ldl_decompose(m);
    const bool oracle = psd_by_minors(m);
    CHECK(res.psd == oracle);
    if (res.psd) {
      ++psd_count;
      CHECK(ldl_reconstruct(res.ldl) == m);
      for (const auto& d : res.ldl.d) CHECK(d >= 0);
      if (!m.is_zero_matrix()) CHECK(charpoly_sign_check(m));
    } else {
      REQUIRE(res.witness.size() == n);
      CHECK(quad(m, res.witness) < 0);
      CHECK_FALSE(charpoly_sign_check(m));
    }
  }
  CHECK(psd_count > 20);
}

TEST_CASE("zero pivot with a nonzero row is not PSD") {
  const Matrix<Rational> m{{0, 1}, {1, 5}};
  const auto res = ldl_decompose(m);
  REQUIRE_FALSE(res.psd);
  CHECK(quad(m, res.witness) < 0);
}

TEST_CASE("LDL over a number field uses the real embedding") {
  const FieldPtr k = NumberField::make(parse_univariate("Z^2-2"), "a", 1);
  const AlgebraicNumber a = AlgebraicNumber::generator(k);
  // [[a, 1], [1, a]] has eigenvalues a +- 1 > 0 for a = sqrt 2.
  const Matrix<AlgebraicNumber> m{{a, AlgebraicNumber(1)}, {AlgebraicNumber(1), a}};
  const auto res = ldl_decompose(m);
  CHECK(res.psd);
  CHECK(ldl_reconstruct(res.ldl) == m);
  CHECK(charpoly_sign_check(m));
  const Matrix<AlgebraicNumber> bad{{AlgebraicNumber(1), a}, {a, AlgebraicNumber(1)}};
  CHECK_FALSE(ldl_decompose(bad).psd);
  CHECK_FALSE(charpoly_sign_check(bad));
}

TEST_CASE("certificate from the ternary quartic Gram matrix") {
  const QPoly f = load_poly("ternary_quartic.poly");
  const Matrix<Rational> q{{10, 3, -11, 15, 3, 2},  {3, 9, -15, 0, 0, 6}, {-11, -15, 29, -10, -2, -10},
                           {15, 0, -10, 25, 5, 0},  {3, 0, -2, 5, 1, 0},  {2, 6, -10, 0, 0, 4}};
  const MonomialBasis b = monomial_basis(f.vars(), 2);
  const Certificate c = extract_certificate(q, b);
  REQUIRE(c.size() == 2);
  CHECK(c.coefficients[0] == AlgebraicNumber(10));
  CHECK(c.coefficients[1] == AlgebraicNumber(Rational(81, 10)));
  CHECK(c.polynomials[0] == parse_nf_polynomial("x^2+3/10*x*y-11/10*x*z+3/2*y^2+3/10*y*z+1/5*z^2", f.vars()));
  CHECK(c.polynomials[1] == parse_nf_polynomial("x*y-13/9*x*z-5/9*y^2-1/9*y*z+2/3*z^2", f.vars()));
  CHECK(c.is_rational());
  CHECK(verify_certificate(c, f));

  const Certificate back = parse_certificate(serialize(c));
  CHECK(verify_certificate(back, f));
  CHECK(back.gram == c.gram);

  Certificate tampered = c;
  tampered.coefficients[1] = AlgebraicNumber(Rational(82, 10));
  CHECK_FALSE(verify_certificate(tampered, f));
  Certificate negative = c;
  negative.coefficients[0] = AlgebraicNumber(-10);
  CHECK_FALSE(verify_certificate(negative, f));
}

TEST_CASE("algebraic certificate serialization round-trip") {
  const FieldPtr k = NumberField::make(parse_univariate("Z^3-2"), "a", 0);
  const VarList v = make_vars({"x", "y"});
  const NfPoly p1 = parse_nf_polynomial("x+a*y", v, k), p2 = parse_nf_polynomial("a^2*x-y", v, k);
  const Certificate c = certificate_from_squares({AlgebraicNumber(1), AlgebraicNumber(2)}, {p1, p2}, k);
  const NfPoly f = p1 * p1 + AlgebraicNumber(2) * (p2 * p2);
  CHECK(verify_certificate(c, f));
  const Certificate back = parse_certificate(serialize(c));
  REQUIRE(back.field);
  CHECK(back.field->degree() == 3);
  CHECK(verify_certificate(back, parse_nf_polynomial(f.to_string(), v, back.field)));
  CHECK_THROWS_AS(parse_certificate("not a certificate\n"), Error);
}
