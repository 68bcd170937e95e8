#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "exactsos/matrix.hpp"
#include "exactsos/multipoly.hpp"

namespace exactsos {

/// Index set of the Gram matrix: exponent vectors of the monomials in v(x),
/// in decreasing grlex order.
struct MonomialBasis {
  VarList vars;
  std::vector<Exponents> entries;

  size_t size() const { return entries.size(); }
  std::optional<size_t> index_of(const Exponents& e) const;
  std::string monomial(size_t i) const { return monomial_string(entries[i], *vars); }
};

/// All monomials of degree d in the given variables.
MonomialBasis monomial_basis(const VarList& vars, unsigned d);

/// Affine family W(t) = constant + sum_j t_j * directions[j] of symmetric
/// matrices. An "empty" pencil records that the imposed conditions admit no
/// Gram matrix at all.
template <class K>
class GramPencil {
 public:
  GramPencil() = default;
  GramPencil(MonomialBasis basis, Matrix<K> constant, std::vector<Matrix<K>> directions,
             std::vector<std::string> names)
      : basis_(std::move(basis)), constant_(std::move(constant)), directions_(std::move(directions)),
        names_(std::move(names)) {
    if (names_.size() != directions_.size()) throw Error("parameter names do not match directions");
  }

  static GramPencil empty(MonomialBasis basis) {
    GramPencil p;
    p.basis_ = std::move(basis);
    p.empty_ = true;
    return p;
  }

  const MonomialBasis& basis() const { return basis_; }
  size_t size() const { return basis_.size(); }
  size_t num_params() const { return directions_.size(); }
  bool is_empty() const { return empty_; }
  const Matrix<K>& constant() const { return constant_; }
  const std::vector<Matrix<K>>& directions() const { return directions_; }
  const Matrix<K>& direction(size_t j) const { return directions_[j]; }
  const std::vector<std::string>& param_names() const { return names_; }

  Matrix<K> evaluate(const std::vector<K>& t) const {
    if (t.size() != directions_.size()) throw Error("parameter vector has the wrong length");
    Matrix<K> w = constant_;
    for (size_t j = 0; j < t.size(); ++j) {
      if (is_zero(t[j])) continue;
      for (size_t r = 0; r < w.rows(); ++r) {
        for (size_t c = 0; c < w.cols(); ++c) {
          const K& d = directions_[j](r, c);
          if (!is_zero(d)) w(r, c) = w(r, c) + t[j] * d;
        }
      }
    }
    return w;
  }

  /// Entry (r, c) as an affine function: [constant, coeff of t_1, ...].
  std::vector<K> affine_entry(size_t r, size_t c) const {
    std::vector<K> a;
    a.reserve(directions_.size() + 1);
    a.push_back(constant_(r, c));
    for (const auto& d : directions_) a.push_back(d(r, c));
    return a;
  }

  bool entry_identically_zero(size_t r, size_t c) const {
    if (!is_zero(constant_(r, c))) return false;
    for (const auto& d : directions_) {
      if (!is_zero(d(r, c))) return false;
    }
    return true;
  }

 private:
  MonomialBasis basis_;
  Matrix<K> constant_;
  std::vector<Matrix<K>> directions_;
  std::vector<std::string> names_;
  bool empty_ = false;
};

/// Gram pencil of a form f of even degree 2d over all degree-d monomials,
/// or over a user-given basis (every monomial of f must be a sum of two
/// basis exponents).
GramPencil<Rational> build_pencil(const QPoly& f, const std::optional<MonomialBasis>& basis = std::nullopt);

/// v(x)^T M v(x) over the basis.
template <class K>
MultiPoly<K> gram_form(const MonomialBasis& basis, const Matrix<K>& m);

/// Maximum exact rank of W(t) over `draws` random integer specializations
/// with entries uniform in [-bound, bound].
template <class K>
size_t generic_rank(const GramPencil<K>& p, std::mt19937_64& rng, int draws = 3, long bound = 10000);

template <class K>
std::vector<K> random_parameters(size_t k, std::mt19937_64& rng, long bound = 10000);

/// Pivot columns of exact elimination (fraction-free for rationals).
std::vector<size_t> exact_pivots(const Matrix<Rational>& m);
std::vector<size_t> exact_pivots(const Matrix<AlgebraicNumber>& m);

GramPencil<AlgebraicNumber> lift_pencil(const GramPencil<Rational>& p);
/// The same pencil with rational entries, when all entries are rational.
std::optional<GramPencil<Rational>> lower_pencil(const GramPencil<AlgebraicNumber>& p);

/// Text dump: header "size m params k", then the constant and each direction
/// as comma-separated rational rows.
std::string dump_pencil(const GramPencil<Rational>& p);

}  // namespace exactsos
