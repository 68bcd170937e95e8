#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "exactsos/rational.hpp"
#include "exactsos/univariate.hpp"

namespace exactsos {

/// Q(a) = Q[Z]/(m(Z)). The defining polynomial may be non-monic; arithmetic
/// reduces with its monic associate. Irreducibility is trusted unless
/// check_irreducible() is called.
///
/// A field may carry a designated real embedding (the k-th real root of m in
/// increasing order). Signs and floating-point values of field elements are
/// taken in that embedding.
class NumberField {
 public:
  enum class Irreducibility { Certified, Reducible, Unknown };

  NumberField(UniPoly minpoly, std::string generator = "a",
              std::optional<size_t> real_root = std::nullopt);

  static std::shared_ptr<const NumberField> make(UniPoly minpoly, std::string generator = "a",
                                                 std::optional<size_t> real_root = std::nullopt) {
    return std::make_shared<const NumberField>(std::move(minpoly), std::move(generator), real_root);
  }

  const UniPoly& minpoly() const { return minpoly_; }
  const UniPoly& monic_minpoly() const { return monic_; }
  size_t degree() const { return degree_; }
  const std::string& generator() const { return generator_; }

  /// Tr(a^k) for 0 <= k < degree (Newton power sums of the roots of m).
  const std::vector<Rational>& power_traces() const { return power_traces_; }
  /// Power-basis coordinates of a^k for 0 <= k <= 2*degree - 2.
  const std::vector<Rational>& reduced_power(size_t k) const { return reduced_powers_.at(k); }

  size_t real_root_count() const { return real_roots_; }
  bool has_embedding() const { return embedding_.has_value(); }
  /// Isolating interval (lo, hi] of the designated real root.
  const Interval& embedding() const;
  std::optional<size_t> embedding_index() const { return embedding_index_; }
  /// Floating-point value of the designated real root.
  double root_value() const;

  /// Same defining polynomial up to a scalar (fields are then identified).
  bool same_as(const NumberField& other) const;

  /// Squarefreeness and rational-root screening plus a Rabin irreducibility
  /// test of m modulo small primes. Certified means irreducible mod some p.
  Irreducibility check_irreducible() const;

 private:
  UniPoly minpoly_;
  UniPoly monic_;
  size_t degree_;
  std::string generator_;
  std::vector<Rational> power_traces_;
  std::vector<std::vector<Rational>> reduced_powers_;
  size_t real_roots_ = 0;
  std::optional<size_t> embedding_index_;
  std::optional<Interval> embedding_;
  double root_value_ = 0.0;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of a number field as power-basis coordinates. An element without
/// a field is a plain rational scalar; it combines with elements of any field.
class AlgebraicNumber {
 public:
  AlgebraicNumber() : coords_{Rational(0)} {}
  AlgebraicNumber(long v) : coords_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
  AlgebraicNumber(int v) : coords_{Rational(v)} {}   // NOLINT(google-explicit-constructor)
  AlgebraicNumber(const Rational& q) : coords_{q} {}  // NOLINT(google-explicit-constructor)
  AlgebraicNumber(FieldPtr field, std::vector<Rational> coords);

  static AlgebraicNumber generator(const FieldPtr& field);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }
  Rational coord(size_t i) const { return i < coords_.size() ? coords_[i] : Rational(0); }

  bool is_zero() const;
  bool is_rational() const;
  /// Throws Error when the value is not rational.
  Rational to_rational() const;
  /// Throws Error for zero.
  AlgebraicNumber inverse() const;

  AlgebraicNumber operator-() const;
  AlgebraicNumber& operator+=(const AlgebraicNumber& b);
  AlgebraicNumber& operator-=(const AlgebraicNumber& b);
  AlgebraicNumber& operator*=(const AlgebraicNumber& b);
  AlgebraicNumber& operator/=(const AlgebraicNumber& b) { return *this *= b.inverse(); }

  friend AlgebraicNumber operator+(AlgebraicNumber a, const AlgebraicNumber& b) { return a += b; }
  friend AlgebraicNumber operator-(AlgebraicNumber a, const AlgebraicNumber& b) { return a -= b; }
  friend AlgebraicNumber operator*(AlgebraicNumber a, const AlgebraicNumber& b) { return a *= b; }
  friend AlgebraicNumber operator/(AlgebraicNumber a, const AlgebraicNumber& b) { return a /= b; }
  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) { return (a - b).is_zero(); }
  friend bool operator!=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return !(a == b); }

 private:
  // Brings a and b to a common field; throws Error on incompatible fields.
  static FieldPtr common_field(const AlgebraicNumber& a, const AlgebraicNumber& b);
  // Drops a stale field from whichever operand is rational when the fields
  // differ; returns the operand to use in place of b.
  const AlgebraicNumber& reconcile(const AlgebraicNumber& b, AlgebraicNumber& scratch);
  void lift_to(const FieldPtr& field);

  FieldPtr field_;
  std::vector<Rational> coords_;
};

inline bool is_zero(const AlgebraicNumber& a) { return a.is_zero(); }
inline bool is_rational(const AlgebraicNumber& a) { return a.is_rational(); }

/// Tr_{Q(a)/Q}; a plain rational q has trace q (degree-1 field).
Rational nf_trace(const AlgebraicNumber& a);
/// Trace of a read as an element of the given field (q -> degree * q).
Rational nf_trace(const AlgebraicNumber& a, const NumberField& field);

/// Sign in the designated real embedding (Sturm bisection plus interval
/// evaluation). Throws Error when the field has no embedding.
int sign(const AlgebraicNumber& a);
double to_double(const AlgebraicNumber& a);
std::string to_string(const AlgebraicNumber& a);

/// Power-basis polynomial of a, as a univariate polynomial in the generator.
UniPoly as_unipoly(const AlgebraicNumber& a);

}  // namespace exactsos
