#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "exactsos/number_field.hpp"
#include "exactsos/rational.hpp"

namespace exactsos {

using Exponents = std::vector<unsigned>;
using VarList = std::shared_ptr<const std::vector<std::string>>;

inline VarList make_vars(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

inline unsigned total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

/// Graded lexicographic order with the variable list order (x1 > x2 > ...).
inline bool grlex_less(const Exponents& a, const Exponents& b) {
  const unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Orders terms from the leading (largest) monomial down.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const { return grlex_less(b, a); }
};

inline bool divides(const Exponents& a, const Exponents& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

inline std::string monomial_string(const Exponents& e, const std::vector<std::string>& vars) {
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

/// Sparse polynomial in an ordered list of variables over a coefficient
/// ring K. Zero coefficients are never stored.
namespace detail {
template <class K>
bool coeff_zero(const K& c) {
  return is_zero(c);
}
}  // namespace detail

template <class K>
class MultiPoly {
 public:
  using Coefficient = K;
  using Terms = std::map<Exponents, K, GrlexGreater>;

  MultiPoly() : vars_(empty_vars()) {}
  // Integer constants without a variable list; they adopt the variables of
  // whatever they are combined with. Lets generic ring code write R(0), R(1).
  MultiPoly(int c) : vars_(empty_vars()) { add_term(Exponents{}, K(c)); }  // NOLINT
  explicit MultiPoly(VarList vars) : vars_(std::move(vars)) {}
  MultiPoly(VarList vars, Terms terms) : vars_(std::move(vars)), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (detail::coeff_zero(it->second)) it = terms_.erase(it);
      else ++it;
    }
  }

  static MultiPoly constant(VarList vars, const K& c) {
    MultiPoly p(std::move(vars));
    p.add_term(Exponents(p.nvars(), 0), c);
    return p;
  }
  static MultiPoly variable(VarList vars, size_t i) {
    Exponents e(vars->size(), 0);
    e.at(i) = 1;
    return monomial(std::move(vars), std::move(e), K(1));
  }
  static MultiPoly monomial(VarList vars, Exponents e, const K& c) {
    MultiPoly p(std::move(vars));
    p.add_term(e, c);
    return p;
  }

  const VarList& vars() const { return vars_; }
  size_t nvars() const { return vars_->size(); }
  const Terms& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }
  K constant_term() const { return coefficient(Exponents(nvars(), 0)); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(total_degree(terms_.begin()->first)); }
  unsigned degree_in(size_t v) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, v < e.size() ? e[v] : 0u);
    return d;
  }
  bool involves(size_t v) const { return degree_in(v) > 0; }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const unsigned d = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_) {
      if (total_degree(e) != d) return false;
    }
    return true;
  }

  K coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? K(0) : it->second;
  }
  const Exponents& leading_monomial() const { return terms_.begin()->first; }
  const K& leading_coefficient() const { return terms_.begin()->second; }

  void add_term(const Exponents& e, const K& c) {
    if (detail::coeff_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second = it->second + c;
      if (detail::coeff_zero(it->second)) terms_.erase(it);
    }
  }

  MultiPoly operator-() const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, K(0) - c);
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& b) {
    adopt_vars(b);
    for (const auto& [e, c] : b.terms_) add_term(pad(e), c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& b) {
    adopt_vars(b);
    for (const auto& [e, c] : b.terms_) add_term(pad(e), K(0) - c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r(a.nvars() >= b.nvars() ? a.vars_ : b.vars_);
    if (a.nvars() != b.nvars() && a.nvars() != 0 && b.nvars() != 0) {
      throw Error("polynomials over different variable lists");
    }
    const size_t n = r.nvars();
    Exponents e(n);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (size_t i = 0; i < n; ++i) e[i] = (i < ea.size() ? ea[i] : 0) + (i < eb.size() ? eb[i] : 0);
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }
  friend MultiPoly operator*(const K& s, const MultiPoly& a) {
    MultiPoly r(a.vars_);
    if (detail::coeff_zero(s)) return r;
    for (const auto& [e, c] : a.terms_) r.add_term(e, s * c);
    return r;
  }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return (a - b).is_zero(); }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly pow(unsigned k) const {
    MultiPoly result = constant(vars_, K(1)), base = *this;
    while (k > 0) {
      if (k & 1u) result = result * base;
      k >>= 1u;
      if (k > 0) base = base * base;
    }
    return result;
  }

  /// Applies fn to every coefficient; terms mapping to zero are dropped.
  template <class Fn>
  auto map_coefficients(Fn fn) const -> MultiPoly<decltype(fn(std::declval<const K&>()))> {
    using R = decltype(fn(std::declval<const K&>()));
    MultiPoly<R> r(vars_);
    for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
    return r;
  }

  /// Coefficients with respect to variable v: degree -> polynomial free of v.
  std::map<unsigned, MultiPoly> coefficients_in(size_t v) const {
    std::map<unsigned, MultiPoly> out;
    for (const auto& [e, c] : terms_) {
      Exponents r = e;
      unsigned k = 0;
      if (v < r.size()) std::swap(k, r[v]);
      auto it = out.try_emplace(k, MultiPoly(vars_)).first;
      it->second.add_term(r, c);
    }
    return out;
  }

  /// Value at a point whose coordinates live in a ring R containing K.
  template <class R>
  R evaluate(const std::vector<R>& point) const {
    if (point.size() != nvars()) throw Error("evaluation point has the wrong length");
    std::vector<std::vector<R>> powers(nvars());
    auto power = [&](size_t i, unsigned k) -> const R& {
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(R(1));
      while (pw.size() <= k) pw.push_back(pw.back() * point[i]);
      return pw[k];
    };
    R acc(0);
    for (const auto& [e, c] : terms_) {
      R t(c);
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] > 0) t = t * power(i, e[i]);
      }
      acc = acc + t;
    }
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const bool has_mono = total_degree(e) > 0;
      std::string cs = coefficient_string(c);
      bool negative = false;
      if (!cs.empty() && cs[0] == '-') {
        negative = true;
        cs.erase(0, 1);
      }
      if (negative) out << "-";
      else if (!first) out << "+";
      first = false;
      if (!has_mono) {
        out << cs;
      } else {
        if (cs != "1") out << cs << "*";
        out << monomial_string(e, *vars_);
      }
    }
    return out.str();
  }

 private:
  static const VarList& empty_vars() {
    static const VarList v = make_vars({});
    return v;
  }
  static std::string coefficient_string(const K& c) {
    using exactsos::to_string;
    return to_string(c);
  }
  void adopt_vars(const MultiPoly& b) {
    if (vars_ == b.vars_) return;
    if (nvars() == b.nvars()) {
      if (*vars_ != *b.vars_) throw Error("polynomials over different variable lists");
      return;
    }
    if (nvars() == 0) {
      Terms moved;
      for (auto& [e, c] : terms_) moved.emplace(Exponents(b.nvars(), 0), c);
      terms_ = std::move(moved);
      vars_ = b.vars_;
      return;
    }
    if (b.nvars() != 0) throw Error("polynomials over different variable lists");
  }
  Exponents pad(const Exponents& e) const {
    if (e.size() == nvars()) return e;
    Exponents r(nvars(), 0);
    std::copy(e.begin(), e.end(), r.begin());
    return r;
  }

  VarList vars_;
  Terms terms_;
};

template <class K>
bool is_zero(const MultiPoly<K>& p) {
  return p.is_zero();
}

template <class K>
std::string to_string(const MultiPoly<K>& p) {
  return "(" + p.to_string() + ")";
}

/// Exact quotient a / b over a coefficient field, or nullopt when b does not
/// divide a. Throws Error when b = 0.
template <class K>
std::optional<MultiPoly<K>> divide_exact(const MultiPoly<K>& a, const MultiPoly<K>& b) {
  if (b.is_zero()) throw Error("division by the zero polynomial");
  MultiPoly<K> r = a;
  if (r.nvars() == 0 && b.nvars() != 0) r = r + MultiPoly<K>(b.vars());
  MultiPoly<K> q(r.vars());
  Exponents lb = b.leading_monomial();
  lb.resize(r.nvars(), 0);
  const K lcb = b.leading_coefficient();
  Exponents e(r.nvars());
  while (!r.is_zero()) {
    const Exponents& lr = r.leading_monomial();
    if (!divides(lb, lr)) return std::nullopt;
    for (size_t i = 0; i < e.size(); ++i) e[i] = lr[i] - lb[i];
    const K c = r.leading_coefficient() / lcb;
    q.add_term(e, c);
    r -= MultiPoly<K>::monomial(r.vars(), e, c) * b;
  }
  return q;
}

using QPoly = MultiPoly<Rational>;
using NfPoly = MultiPoly<AlgebraicNumber>;

}  // namespace exactsos
