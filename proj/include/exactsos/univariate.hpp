#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "exactsos/rational.hpp"

namespace exactsos {

/// Dense univariate polynomial over Q; coefficient i multiplies Z^i.
/// Trailing zero coefficients are never stored.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> ascending_coeffs);
  static UniPoly constant(const Rational& c);
  static UniPoly monomial(const Rational& c, unsigned k);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Rational coeff(size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const Rational& leading() const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  UniPoly derivative() const;
  UniPoly monic() const;
  /// Positive rational multiple with coprime integer coefficients (sign kept).
  UniPoly primitive() const;
  Rational evaluate(const Rational& x) const;
  double evaluate(double x) const;

  UniPoly operator-() const;
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const Rational& c, const UniPoly& a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Quotient and remainder; throws Error when b = 0.
  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);

  std::string to_string(std::string_view var = "Z") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Monic gcd; gcd(0, 0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// Returns (g, s) with g = gcd(a, m) monic and s*a = g (mod m).
std::pair<UniPoly, UniPoly> half_extended_gcd(const UniPoly& a, const UniPoly& m);

UniPoly squarefree_part(const UniPoly& p);

/// Sturm chain of the squarefree part of p, each member scaled to a
/// primitive integer polynomial by a positive factor.
std::vector<UniPoly> sturm_sequence(const UniPoly& p);

/// Closed rational interval [lo, hi].
struct Interval {
  Rational lo;
  Rational hi;
};

/// Number of distinct real roots of p, on the whole line or in the closed
/// interval. Throws Error for the zero polynomial.
size_t real_root_count(const UniPoly& p, const std::optional<Interval>& interval = std::nullopt);

/// Disjoint intervals (lo, hi], each holding exactly one real root of p,
/// sorted increasingly.
std::vector<Interval> isolate_real_roots(const UniPoly& p);

/// Bisects an isolating interval of the squarefree polynomial p until
/// hi - lo <= width.
Interval refine_root(const UniPoly& p, Interval root, const Rational& width);

/// Enclosure of {p(x) : lo <= x <= hi} by interval Horner evaluation.
Interval interval_evaluate(const UniPoly& p, const Interval& x);

}  // namespace exactsos
