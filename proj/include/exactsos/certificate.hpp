#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exactsos/gram.hpp"
#include "exactsos/number_field.hpp"

namespace exactsos {

/// Best rational approximation of x with denominator <= max_den (continued
/// fraction convergents and semiconvergents).
Rational best_rational(double x, const Integer& max_den);
std::vector<Rational> round_params(const std::vector<double>& t, const Integer& max_den);

/// Symmetric elimination M[perm, perm] = U^T D U, U unit upper triangular.
/// Pivots are taken in index order; a zero pivot must have a zero row.
template <class K>
struct Ldl {
  std::vector<size_t> perm;
  Matrix<K> u;
  std::vector<K> d;

  size_t rank() const;
};

/// Either a factorization with all pivots >= 0, or a witness w with
/// w^T M w < 0.
template <class K>
struct LdlResult {
  bool psd = false;
  Ldl<K> ldl;
  std::vector<K> witness;
};

/// Signs of AlgebraicNumber entries are taken in the field's designated real
/// embedding.
template <class K>
LdlResult<K> ldl_decompose(const Matrix<K>& m);

/// P U^T D U P^T, for round-trip checks.
template <class K>
Matrix<K> ldl_reconstruct(const Ldl<K>& l);

/// True iff det(xI - M) = x^(m-s) g(x) where the coefficients of g have
/// strictly alternating signs (all roots of g positive by Descartes' rule).
template <class K>
bool charpoly_sign_check(const Matrix<K>& m);

/// f = sum c_i p_i^2 with c_i > 0, plus the Gram matrix over `basis`.
/// Coefficients live in Q or in one number field (field null for Q).
struct Certificate {
  FieldPtr field;
  VarList vars;
  std::vector<AlgebraicNumber> coefficients;
  std::vector<NfPoly> polynomials;
  MonomialBasis basis;
  Matrix<AlgebraicNumber> gram;

  bool is_rational() const;
  size_t size() const { return coefficients.size(); }
};

/// Terms with D_ii > 0: c_i = D_ii and p_i = sum_j U_ij v_perm(j).
/// Throws Error when M is not PSD.
template <class K>
Certificate extract_certificate(const Matrix<K>& m, const MonomialBasis& basis);

/// Certificate from explicit squares: f = sum c_i p_i^2 with the p_i
/// homogeneous of one degree; the Gram matrix is sum c_i u_i u_i^T.
Certificate certificate_from_squares(std::vector<AlgebraicNumber> coefficients, std::vector<NfPoly> polynomials,
                                     FieldPtr field = nullptr);

/// Exact expansion of sum c_i p_i^2 and of v^T gram v against f; also checks
/// c_i > 0.
bool verify_certificate(const Certificate& cert, const NfPoly& f);
bool verify_certificate(const Certificate& cert, const QPoly& f);

/// Text format:
///   exactsos-certificate v1
///   vars: x, y, z
///   field: a, minpoly: Z^3-2, root: 0        (only over a number field)
///   coefficients: 10; 81/10
///   polynomial: x^2+3/10*x*y-...
///   basis: x^2, x*y, ...
///   gram: 10, 3, -11, ...                     (one line per row)
std::string serialize(const Certificate& cert);
Certificate parse_certificate(std::string_view text);

}  // namespace exactsos
