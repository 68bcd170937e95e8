#pragma once

#include <optional>

#include "exactsos/matrix.hpp"
#include "exactsos/multipoly.hpp"

namespace exactsos {

/// Index of the variable `name` in p's variable list; throws when absent.
template <class K>
size_t variable_index(const MultiPoly<K>& p, std::string_view name) {
  const auto& vs = *p.vars();
  for (size_t i = 0; i < vs.size(); ++i) {
    if (vs[i] == name) return i;
  }
  throw Error("unknown variable " + std::string(name));
}

template <class K>
MultiPoly<K> var_power(const VarList& vars, size_t v, unsigned k) {
  Exponents e(vars->size(), 0);
  e[v] = k;
  return MultiPoly<K>::monomial(vars, std::move(e), K(1));
}

/// Res_v(p, q) as the determinant of the Sylvester matrix.
template <class K>
MultiPoly<K> resultant_in(const MultiPoly<K>& p, const MultiPoly<K>& q, size_t v) {
  if (p.is_zero() || q.is_zero()) throw Error("resultant with the zero polynomial");
  const unsigned m = p.degree_in(v), n = q.degree_in(v);
  if (m == 0 && n == 0) throw Error("resultant of polynomials free of the variable");
  const VarList& vars = p.nvars() ? p.vars() : q.vars();
  if (m == 0) return p.pow(n);
  if (n == 0) return q.pow(m);
  const auto pc = p.coefficients_in(v), qc = q.coefficients_in(v);
  const size_t size = m + n;
  Matrix<MultiPoly<K>> s(size, size, MultiPoly<K>(vars));
  for (size_t r = 0; r < n; ++r) {
    for (const auto& [k, c] : pc) s(r, r + (m - k)) = c;
  }
  for (size_t r = 0; r < m; ++r) {
    for (const auto& [k, c] : qc) s(n + r, r + (n - k)) = c;
  }
  return berkowitz_determinant(s);
}

/// Pseudo-remainder of a by b with respect to variable v.
template <class K>
MultiPoly<K> pseudo_remainder(MultiPoly<K> a, const MultiPoly<K>& b, size_t v) {
  const unsigned db = b.degree_in(v);
  const auto bc = b.coefficients_in(v);
  const MultiPoly<K> lb = bc.rbegin()->second;
  while (!a.is_zero() && a.degree_in(v) >= db) {
    const unsigned da = a.degree_in(v);
    const MultiPoly<K> la = a.coefficients_in(v).rbegin()->second;
    a = lb * a - la * var_power<K>(a.vars(), v, da - db) * b;
  }
  return a;
}

template <class K>
MultiPoly<K> normalize_leading(const MultiPoly<K>& p) {
  if (p.is_zero()) return p;
  return (K(1) / p.leading_coefficient()) * p;
}

template <class K>
MultiPoly<K> mv_gcd(const MultiPoly<K>& p, const MultiPoly<K>& q);

/// Gcd of the coefficients of p viewed as a polynomial in v.
template <class K>
MultiPoly<K> content_in(const MultiPoly<K>& p, size_t v) {
  MultiPoly<K> g(p.vars());
  for (const auto& [k, c] : p.coefficients_in(v)) {
    g = mv_gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

namespace detail {

template <class K>
std::optional<size_t> first_variable(const MultiPoly<K>& p, const MultiPoly<K>& q) {
  const size_t n = std::max(p.nvars(), q.nvars());
  for (size_t v = 0; v < n; ++v) {
    if ((v < p.nvars() && p.involves(v)) || (v < q.nvars() && q.involves(v))) return v;
  }
  return std::nullopt;
}

template <class K>
MultiPoly<K> exact_quotient(const MultiPoly<K>& a, const MultiPoly<K>& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error("internal: inexact division in gcd");
  return *q;
}

}  // namespace detail

/// Gcd with leading coefficient 1 under grlex, by content / primitive part
/// recursion and primitive remainder sequences. Throws when both are zero.
template <class K>
MultiPoly<K> mv_gcd(const MultiPoly<K>& p, const MultiPoly<K>& q) {
  if (p.is_zero() && q.is_zero()) throw Error("gcd(0, 0) is undefined");
  if (p.is_zero()) return normalize_leading(q);
  if (q.is_zero()) return normalize_leading(p);
  const VarList& vars = p.nvars() >= q.nvars() ? p.vars() : q.vars();
  const auto v = detail::first_variable(p, q);
  if (!v) return MultiPoly<K>::constant(vars, K(1));
  if (!p.involves(*v) || !q.involves(*v)) {
    // Only one side depends on v: the gcd divides every v-coefficient.
    const MultiPoly<K>& dep = p.involves(*v) ? p : q;
    const MultiPoly<K>& other = p.involves(*v) ? q : p;
    return normalize_leading(mv_gcd(content_in(dep, *v), other));
  }
  const MultiPoly<K> cp = content_in(p, *v), cq = content_in(q, *v);
  MultiPoly<K> a = detail::exact_quotient(p, cp), b = detail::exact_quotient(q, cq);
  const MultiPoly<K> c = mv_gcd(cp, cq);
  if (a.degree_in(*v) < b.degree_in(*v)) std::swap(a, b);
  while (!b.is_zero() && b.degree_in(*v) > 0) {
    MultiPoly<K> r = pseudo_remainder(a, b, *v);
    a = std::move(b);
    if (r.is_zero()) {
      b = MultiPoly<K>(vars);
      break;
    }
    b = detail::exact_quotient(r, content_in(r, *v));
  }
  MultiPoly<K> g = b.is_zero() ? a : MultiPoly<K>::constant(vars, K(1));
  if (!g.is_constant()) g = detail::exact_quotient(g, content_in(g, *v));
  return normalize_leading(c * g);
}

}  // namespace exactsos
