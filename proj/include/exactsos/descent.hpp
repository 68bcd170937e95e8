#pragma once

#include <optional>
#include <string>
#include <utility>

#include "exactsos/multipoly.hpp"
#include "exactsos/number_field.hpp"

namespace exactsos {

/// re + I*im with I^2 = -1.
template <class K>
struct GaussianPoly {
  MultiPoly<K> re;
  MultiPoly<K> im;
};

/// Q(I) with I^2 = -1 (no real embedding).
FieldPtr gaussian_field();
NfPoly to_gaussian(const GaussianPoly<Rational>& g);
GaussianPoly<Rational> from_gaussian(const NfPoly& p);
/// Complex conjugate: I -> -I.
NfPoly gaussian_conjugate(const NfPoly& p);

struct ConjugateProduct {
  QPoly f;   // p1^2 + p2^2
  QPoly P1;  // P1 + I P2 = prod_i (sigma_i(p1) + I sigma_i(p2))
  QPoly P2;
  size_t degree = 1;
};

/// Product over the conjugates of a, computed as Res_Z(m(Z), p1(Z) + I p2(Z))
/// / lc(m)^deg_Z. Requires p1^2 + p2^2 to be rational and deg(m) odd;
/// checks f^d = P1^2 + P2^2 exactly.
ConjugateProduct conjugate_product(const NfPoly& p1, const NfPoly& p2, const FieldPtr& field);

struct DescentOptions {
  int max_depth = 32;  // gcd extractions
};

struct DescentResult {
  bool complete = false;
  bool fast_path = false;
  QPoly q1;
  QPoly q2;
  /// When incomplete: f = (P1 / f^k)^2 + (P2 / f^k)^2 with k = (d-1)/2.
  unsigned denominator_power = 0;
  std::string note;
};

/// From f^d = P1^2 + P2^2 (d odd) to f = q1^2 + q2^2 with polynomial q_i.
/// Fast path: exact division by f^((d-1)/2). General path over Q(I)[x]:
/// G = P1 + I P2, c = gcd(G, conj G), g = gcd(G / c, f), f / (g conj g) = s^2,
/// and q1 + I q2 = mu g s with mu fixed by leading coefficients.
DescentResult two_square_descent(const QPoly& f, const QPoly& P1, const QPoly& P2, size_t d,
                                 const DescentOptions& options = {});

/// Exact square root of a polynomial over Q; nullopt when not a square.
std::optional<QPoly> polynomial_sqrt(const QPoly& r);

struct ThreeSquares {
  FieldPtr field;  // Q(a), a^3 = 2
  QPoly delta;     // b1 c2 - b2 c1
  QPoly a1_num;    // a1 = a1_num / (2 delta)
  QPoly a2_num;    // a2 = a2_num / (2 delta)
  NfPoly p1, p2, p3;  // 2 delta (a_i + b_i a + c_i a^2)
  QPoly f;            // p1^2 + p2^2 + p3^2 = 4 delta^2 (sum of the unscaled squares)
};

/// Solves B = C = 0 for a1, a2 and clears the denominator 2 delta. Checks
/// that the a and a^2 components of the sum of squares vanish.
ThreeSquares gen_three_squares(const QPoly& a3, const QPoly& b1, const QPoly& b2, const QPoly& b3, const QPoly& c1,
                               const QPoly& c2, const QPoly& c3);

}  // namespace exactsos
