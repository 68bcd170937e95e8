#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "exactsos/gram.hpp"
#include "exactsos/number_field.hpp"

namespace exactsos {

enum class ConstraintOrigin { PlainZero, Conjugate, Trace, DiagGhost, MinorGhost, RationalForcing };
std::string to_string(ConstraintOrigin o);

/// Vector u with Q u = 0 for every PSD member Q of the pencil (under the
/// assumptions of its origin).
template <class K>
struct KernelConstraint {
  std::vector<K> vector;
  ConstraintOrigin origin;
};

/// A verified real zero of f with coordinates in Q(a) (field null for a
/// rational point).
struct ZeroPoint {
  FieldPtr field;
  std::vector<AlgebraicNumber> coords;
  size_t real_roots = 1;  // real roots of the minimal polynomial
  std::string label;

  bool is_rational() const;
};

/// Checks f(coords) = 0 exactly and that the field has a real root.
ZeroPoint make_zero_point(const QPoly& f, std::vector<AlgebraicNumber> coords, FieldPtr field = nullptr,
                          std::string label = {});

/// One point per line: `minpoly: <poly in Z> ; coords: <expr in a>, ...`
/// with optional `root: k` (designated real root, 0-based increasing),
/// `generator: b` and `label: text` fields. Rational points omit minpoly.
std::vector<ZeroPoint> parse_zero_file(std::string_view text, const QPoly& f);

/// v(z): the basis monomials evaluated at z.
std::vector<AlgebraicNumber> monomial_vector(const MonomialBasis& basis, const std::vector<AlgebraicNumber>& z);

/// Q v(z) = 0 with v(z) over Q(a).
KernelConstraint<AlgebraicNumber> plain_constraint(const MonomialBasis& basis, const ZeroPoint& z);
/// One rational constraint per power-basis coordinate of v(z) (zero
/// coordinates are dropped).
std::vector<KernelConstraint<Rational>> conjugate_constraints(const MonomialBasis& basis, const ZeroPoint& z);
/// Tr(v(z)); nullopt when the trace vector vanishes (uninformative).
std::optional<KernelConstraint<Rational>> trace_constraint(const MonomialBasis& basis, const ZeroPoint& z);

/// e_k for every identically zero diagonal entry.
template <class K>
std::vector<KernelConstraint<K>> diag_ghosts(const GramPencil<K>& p);

/// Padded kernel vectors of 2x2 principal submatrices whose determinant
/// vanishes identically and whose kernel does not depend on the parameters.
template <class K>
std::vector<KernelConstraint<K>> minor_ghosts(const GramPencil<K>& p, std::vector<std::string>* warnings = nullptr);

/// True when W(t) u = 0 for all t already.
template <class K>
bool satisfied_identically(const GramPencil<K>& p, const std::vector<K>& u);

/// Restricts the pencil to {W(t) : W(t) u = 0 for all given u}.
template <class K>
GramPencil<K> apply_constraints(const GramPencil<K>& p, const std::vector<std::vector<K>>& us);

/// Restricts to parameters satisfying eqs * (t_1, ..., t_k, 1)^T = 0.
template <class K>
GramPencil<K> apply_parameter_equations(const GramPencil<K>& p, const Matrix<K>& eqs);

/// Linear equations (rows [c_1 .. c_k | c_0]) setting every coefficient of
/// a^1, ..., a^(d-1) in every entry to zero. Heuristic: may lose solutions.
Matrix<Rational> force_rational_equations(const GramPencil<AlgebraicNumber>& p);

/// Applies force_rational_equations; the result has rational entries.
GramPencil<Rational> force_rational(const GramPencil<AlgebraicNumber>& p);

enum class ZeroMode { Plain, Conjugate, Trace };

/// Sequential: diagonal ghosts until none is new, then 2x2 minor ghosts until
/// none is new (a diagonal zero created by the second phase waits for the
/// next call). Fixpoint: both kinds together until neither yields anything.
enum class GhostPolicy { Sequential, Fixpoint };

struct ReductionStep {
  std::string label;
  size_t dimension;
  size_t rank;
  bool empty;
};

struct ReductionLog {
  std::vector<ReductionStep> steps;
  std::vector<std::string> warnings;
};

/// Stateful driver of the facial reduction steps. The pencil is rational
/// until a plain constraint over a number field is applied.
class FacialReducer {
 public:
  using Pencil = std::variant<GramPencil<Rational>, GramPencil<AlgebraicNumber>>;

  FacialReducer(GramPencil<Rational> pencil, uint64_t seed = 1, int rank_draws = 3);

  bool is_rational() const { return std::holds_alternative<GramPencil<Rational>>(pencil_); }
  bool is_empty() const;
  const GramPencil<Rational>& rational() const;
  const GramPencil<AlgebraicNumber>& algebraic() const;
  const Pencil& pencil() const { return pencil_; }
  size_t dimension() const;
  size_t size() const;
  size_t rank();

  /// Constraints from the given zeros in one batch.
  void add_zeros(const std::vector<ZeroPoint>& zeros, ZeroMode mode);
  /// Ghost constraints; parameter-free pencils are left alone.
  void ghosts(bool minors, GhostPolicy policy = GhostPolicy::Sequential);
  /// Forces rational entries of an algebraic pencil; no-op when rational.
  void force_rational();

  /// Appends (label, dimension, rank) to the log.
  void record(const std::string& label);
  const ReductionLog& log() const { return log_; }
  std::mt19937_64& rng() { return rng_; }

 private:
  Pencil pencil_;
  std::mt19937_64 rng_;
  int draws_;
  ReductionLog log_;
};

struct ReduceOptions {
  bool trace_equations = true;
  bool force_rational = false;
  bool minor_ghosts = true;
  GhostPolicy ghost_policy = GhostPolicy::Sequential;
  uint64_t seed = 1;
};

/// Zero constraints (trace for algebraic zeros when trace_equations is on,
/// plain otherwise), ghost loop, then with force_rational: plain constraints
/// of each algebraic zero followed by rational forcing and another ghost loop.
FacialReducer reduce(const QPoly& f, const std::vector<ZeroPoint>& zeros, const ReduceOptions& options);

}  // namespace exactsos
