#pragma once

#include <gmpxx.h>

#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace exactsos {

using Integer = mpz_class;
/// Canonical arbitrary-precision rational (gcd(num, den) = 1, den > 0).
using Rational = mpq_class;

/// Raised for malformed input text and mathematically invalid arguments.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q". Throws Error on malformed text or q = 0.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline int sign(const Rational& q) { return sgn(q); }
inline bool is_rational(const Rational&) { return true; }
inline double to_double(const Rational& q) { return q.get_d(); }
inline bool is_zero(double x) { return x == 0.0; }
inline std::string to_string(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

/// Exact value of a finite double.
Rational rational_from_double(double x);

}  // namespace exactsos
