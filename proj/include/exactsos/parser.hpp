#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exactsos/multipoly.hpp"
#include "exactsos/number_field.hpp"
#include "exactsos/univariate.hpp"

namespace exactsos {

// Expression grammar shared by every text input:
//
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor | factor)*     juxtaposition multiplies
//   factor  := ('+' | '-') factor | primary ('^' | '**') integer ...
//   primary := number | identifier | '(' expr ')'
//   number  := digits ['.' digits]
//
// Division is only allowed by nonzero constants. Identifiers are variables,
// or the field generator when a field is supplied. With a known variable
// list, an unknown identifier that splits into known names (xyz, ax) reads
// as their product.

/// Identifiers appearing in text, in order of first appearance.
std::vector<std::string> identifiers(std::string_view text);

/// Alphabetically sorted identifiers of the given texts minus `exclude`.
VarList infer_variables(const std::vector<std::string>& texts, const std::vector<std::string>& exclude = {});

/// Parses a polynomial over Q(a) (or Q when field is null).
NfPoly parse_nf_polynomial(std::string_view text, const VarList& vars, const FieldPtr& field = nullptr);

/// Parses a polynomial with rational coefficients.
QPoly parse_polynomial(std::string_view text, const VarList& vars);

/// Parses a univariate polynomial in `var`.
UniPoly parse_univariate(std::string_view text, const std::string& var = "Z");

/// Parses an expression in the field generator only.
AlgebraicNumber parse_algebraic(std::string_view text, const FieldPtr& field);

/// Comma-separated variable names, e.g. "x,y,z".
VarList parse_variable_list(std::string_view text);

/// A polynomial input file: optional headers `field: a, minpoly: Z^3-2` and
/// `vars: x, y, z` (variable order; explicit vars argument wins), then the
/// expression (may span lines; '#' starts a comment; a trailing ';'
/// is ignored).
struct PolynomialDocument {
  FieldPtr field;
  NfPoly poly;
};

PolynomialDocument parse_polynomial_document(std::string_view text, const VarList& vars = nullptr);

/// Strips '#' comments and joins the remaining lines.
std::string strip_comments(std::string_view text);

/// Parses "field: a, minpoly: Z^3-2" (the header line). Returns null when
/// the line is not a field header.
FieldPtr parse_field_header(std::string_view line);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

}  // namespace exactsos
