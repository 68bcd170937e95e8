#pragma once

#include "exactsos/number_field.hpp"

namespace exactsos {

/// Q(a, b) as Q(c) with c = a + k b for the first k = 1, 2, ... that makes
/// Res_Y(m_a(Z - kY), m_b(Y)) squarefree. That resultant is taken as the
/// defining polynomial (trusted irreducible, as for any field). When both
/// inputs carry real embeddings, c carries the matching one.
struct Compositum {
  FieldPtr field;
  AlgebraicNumber first;   // image of a
  AlgebraicNumber second;  // image of b
};

/// Either argument may be null (Q). Equal fields are returned unchanged.
Compositum compositum(const FieldPtr& a, const FieldPtr& b, const std::string& generator = "c");

/// x(a) with a replaced by `image`, an element of the target field.
AlgebraicNumber embed(const AlgebraicNumber& x, const AlgebraicNumber& image);

}  // namespace exactsos
