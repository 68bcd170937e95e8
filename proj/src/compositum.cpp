#include "exactsos/compositum.hpp"

#include "exactsos/multipoly.hpp"
#include "exactsos/polyalg.hpp"

namespace exactsos {

namespace {

using NfVec = std::vector<AlgebraicNumber>;  // ascending coefficients

void trim(NfVec& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

NfVec nf_rem(NfVec a, const NfVec& b) {
  trim(a);
  const AlgebraicNumber inv = b.back().inverse();
  while (a.size() >= b.size()) {
    const AlgebraicNumber q = a.back() * inv;
    const size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

/// Monic gcd over the number field.
NfVec nf_gcd(NfVec a, NfVec b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    NfVec r = nf_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  const AlgebraicNumber inv = a.back().inverse();
  for (auto& c : a) c *= inv;
  return a;
}

UniPoly resultant_polynomial(const UniPoly& ma, const UniPoly& mb, long k) {
  auto vars = make_vars({"Z", "Y"});
  const QPoly z = QPoly::variable(vars, 0), y = QPoly::variable(vars, 1);
  const QPoly shifted = z - QPoly::constant(vars, Rational(k)) * y;
  QPoly p(vars), q(vars);
  for (int i = ma.degree(); i >= 0; --i) p = p * shifted + QPoly::constant(vars, ma.coeff(i));
  for (int i = mb.degree(); i >= 0; --i) q = q * y + QPoly::constant(vars, mb.coeff(i));
  const QPoly r = resultant_in(p, q, 1);
  std::vector<Rational> c(static_cast<size_t>(r.degree()) + 1, Rational(0));
  for (const auto& [e, v] : r.terms()) c[e[0]] = v;
  return UniPoly(std::move(c));
}

}  // namespace

AlgebraicNumber embed(const AlgebraicNumber& x, const AlgebraicNumber& image) {
  if (x.is_rational()) return AlgebraicNumber(x.coord(0));
  const auto& c = x.coords();
  AlgebraicNumber acc(0);
  for (size_t i = c.size(); i-- > 0;) acc = acc * image + AlgebraicNumber(c[i]);
  return acc;
}

Compositum compositum(const FieldPtr& a, const FieldPtr& b, const std::string& generator) {
  if (!a && !b) return {nullptr, AlgebraicNumber(0), AlgebraicNumber(0)};
  if (!b) return {a, AlgebraicNumber::generator(a), AlgebraicNumber(0)};
  if (!a) return {b, AlgebraicNumber(0), AlgebraicNumber::generator(b)};
  if (a->same_as(*b)) return {a, AlgebraicNumber::generator(a), AlgebraicNumber::generator(a)};

  const UniPoly& ma = a->monic_minpoly();
  const UniPoly& mb = b->monic_minpoly();
  for (long k = 1; k <= 64; ++k) {
    UniPoly m = resultant_polynomial(ma, mb, k);
    if (gcd(m, m.derivative()).degree() > 0) continue;
    m = m.primitive();

    std::optional<size_t> root;
    if (a->has_embedding() && b->has_embedding()) {
      // Pick the real root of m inside the enclosure of a + k b.
      const auto roots = isolate_real_roots(m);
      Interval ia = a->embedding(), ib = b->embedding();
      const UniPoly sa = squarefree_part(a->minpoly()), sb = squarefree_part(b->minpoly());
      std::vector<Interval> rs = roots;
      for (int iter = 0; iter < 400 && !root; ++iter) {
        const Rational lo = ia.lo + Rational(k) * ib.lo, hi = ia.hi + Rational(k) * ib.hi;
        std::vector<size_t> hits;
        for (size_t i = 0; i < rs.size(); ++i) {
          if (!(rs[i].hi < lo) && !(rs[i].lo > hi)) hits.push_back(i);
        }
        if (hits.size() == 1) {
          root = hits[0];
          break;
        }
        if (hits.empty()) throw Error("no real root of the compositum matches the embeddings");
        ia = refine_root(sa, ia, (ia.hi - ia.lo) / 4);
        ib = refine_root(sb, ib, (ib.hi - ib.lo) / 4);
        for (size_t i : hits) rs[i] = refine_root(m, rs[i], (rs[i].hi - rs[i].lo) / 4);
      }
      if (!root) throw Error("could not separate the compositum embedding");
    }
    FieldPtr c = NumberField::make(m, generator, root);
    const AlgebraicNumber gen = AlgebraicNumber::generator(c);

    // a is the common root of m_a(X) and m_b((c - X) / k) over Q(c).
    NfVec pa, pb;
    for (const auto& q : ma.coeffs()) pa.emplace_back(q);
    const AlgebraicNumber inv_k = AlgebraicNumber(Rational(1, k));
    const NfVec lin = {gen * inv_k, AlgebraicNumber(Rational(-1, k))};
    pb = {AlgebraicNumber(mb.coeff(static_cast<size_t>(mb.degree())))};
    for (int i = mb.degree() - 1; i >= 0; --i) {
      NfVec next(pb.size() + 1, AlgebraicNumber(0));
      for (size_t j = 0; j < pb.size(); ++j) {
        next[j] += pb[j] * lin[0];
        next[j + 1] += pb[j] * lin[1];
      }
      next[0] += AlgebraicNumber(mb.coeff(static_cast<size_t>(i)));
      pb = std::move(next);
    }
    const NfVec g = nf_gcd(pa, pb);
    if (g.size() != 2) throw Error("compositum: generator images are not determined");
    const AlgebraicNumber image_a = -g[0];
    const AlgebraicNumber image_b = (gen - image_a) * inv_k;
    return {c, image_a, image_b};
  }
  throw Error("no primitive element a + k b found for k <= 64");
}

}  // namespace exactsos
