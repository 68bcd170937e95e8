#include "exactsos/univariate.hpp"

#include <algorithm>
#include <sstream>

namespace exactsos {

UniPoly::UniPoly(std::vector<Rational> ascending_coeffs) : coeffs_(std::move(ascending_coeffs)) {
  trim();
}

UniPoly UniPoly::constant(const Rational& c) { return UniPoly(std::vector<Rational>{c}); }

UniPoly UniPoly::monomial(const Rational& c, unsigned k) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

const Rational& UniPoly::leading() const {
  if (coeffs_.empty()) throw Error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  const Rational lc = leading();
  std::vector<Rational> v(coeffs_.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = coeffs_[i] / lc;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::primitive() const {
  if (is_zero()) return {};
  Integer den_lcm = 1;
  for (const auto& c : coeffs_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  Integer num_gcd = 0;
  for (const auto& c : coeffs_) {
    Integer n = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
  }
  std::vector<Rational> v(coeffs_.size());
  for (size_t i = 0; i < v.size(); ++i) {
    v[i] = Rational(coeffs_[i].get_num() * (den_lcm / coeffs_[i].get_den()) / num_gcd);
  }
  return UniPoly(std::move(v));
}

Rational UniPoly::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double UniPoly::evaluate(double x) const {
  double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

UniPoly UniPoly::operator-() const {
  std::vector<Rational> v(coeffs_.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = -coeffs_[i];
  return UniPoly(std::move(v));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
  return UniPoly(std::move(v));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UniPoly(std::move(v));
}

UniPoly operator*(const Rational& c, const UniPoly& a) {
  std::vector<Rational> v(a.coeffs_.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = c * a.coeffs_[i];
  return UniPoly(std::move(v));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  if (a.degree() < b.degree()) return {UniPoly(), a};
  std::vector<Rational> r = a.coeffs_;
  std::vector<Rational> q(a.coeffs_.size() - b.coeffs_.size() + 1, Rational(0));
  const Rational& lb = b.leading();
  const size_t db = b.coeffs_.size() - 1;
  for (size_t k = q.size(); k-- > 0;) {
    const Rational c = r[k + db] / lb;
    q[k] = c;
    if (sgn(c) == 0) continue;
    for (size_t j = 0; j <= db; ++j) r[k + j] -= c * b.coeffs_[j];
  }
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

std::string UniPoly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (size_t k = coeffs_.size(); k-- > 0;) {
    const Rational& c = coeffs_[k];
    if (sgn(c) == 0) continue;
    Rational a = abs(c);
    if (sgn(c) < 0) out << "-";
    else if (!first) out << "+";
    first = false;
    const bool unit = (a == 1);
    if (!unit || k == 0) out << exactsos::to_string(a);
    if (k > 0) {
      if (!unit) out << "*";
      out << var;
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = UniPoly::divmod(x, y).second;
    x = std::move(y);
    y = r.primitive();
  }
  return x.monic();
}

std::pair<UniPoly, UniPoly> half_extended_gcd(const UniPoly& a, const UniPoly& m) {
  // Invariant: s0*a = r0 and s1*a = r1 modulo m.
  UniPoly r0 = UniPoly::divmod(a, m).second, r1 = m;
  UniPoly s0 = UniPoly::constant(1), s1;
  while (!r1.is_zero()) {
    auto [q, r] = UniPoly::divmod(r0, r1);
    UniPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.is_zero()) return {UniPoly(), UniPoly()};
  const Rational lc = r0.leading();
  return {r0.monic(), (1 / lc) * UniPoly::divmod(s0, m).second};
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 0) return p;
  UniPoly g = gcd(p, p.derivative());
  return UniPoly::divmod(p, g).first;
}

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  if (p.is_zero()) throw Error("Sturm sequence of the zero polynomial");
  std::vector<UniPoly> seq;
  seq.push_back(squarefree_part(p).primitive());
  if (seq[0].degree() == 0) return seq;
  seq.push_back(seq[0].derivative().primitive());
  while (true) {
    UniPoly r = UniPoly::divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back((-r).primitive());
  }
  return seq;
}

namespace {

size_t variations(const std::vector<int>& signs) {
  size_t v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

size_t variations_at(const std::vector<UniPoly>& seq, const Rational& x) {
  std::vector<int> s;
  s.reserve(seq.size());
  for (const auto& q : seq) s.push_back(sgn(q.evaluate(x)));
  return variations(s);
}

size_t variations_at_infinity(const std::vector<UniPoly>& seq, bool positive) {
  std::vector<int> s;
  s.reserve(seq.size());
  for (const auto& q : seq) {
    int sg = sgn(q.leading());
    if (!positive && q.degree() % 2 == 1) sg = -sg;
    s.push_back(sg);
  }
  return variations(s);
}

// Count of roots in (lo, hi].
size_t count_half_open(const std::vector<UniPoly>& seq, const Rational& lo, const Rational& hi) {
  const size_t a = variations_at(seq, lo), b = variations_at(seq, hi);
  return a >= b ? a - b : 0;
}

Rational cauchy_bound(const UniPoly& p) {
  Rational m = 0;
  const Rational lc = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(p.coeff(static_cast<size_t>(i))) / lc;
    if (r > m) m = r;
  }
  return m + 1;
}

}  // namespace

size_t real_root_count(const UniPoly& p, const std::optional<Interval>& interval) {
  if (p.is_zero()) throw Error("real root count of the zero polynomial");
  const auto seq = sturm_sequence(p);
  if (!interval) {
    const size_t a = variations_at_infinity(seq, false), b = variations_at_infinity(seq, true);
    return a >= b ? a - b : 0;
  }
  if (interval->lo > interval->hi) throw Error("empty interval");
  size_t n = count_half_open(seq, interval->lo, interval->hi);
  if (sgn(seq[0].evaluate(interval->lo)) == 0) ++n;
  return n;
}

std::vector<Interval> isolate_real_roots(const UniPoly& p) {
  const auto seq = sturm_sequence(p);
  std::vector<Interval> out;
  if (seq[0].degree() <= 0) return out;
  const Rational bound = cauchy_bound(seq[0]);
  std::vector<Interval> stack{{-bound, bound}};
  while (!stack.empty()) {
    Interval iv = stack.back();
    stack.pop_back();
    const size_t n = count_half_open(seq, iv.lo, iv.hi);
    if (n == 0) continue;
    if (n == 1) {
      out.push_back(iv);
      continue;
    }
    Rational mid = (iv.lo + iv.hi) / 2;
    stack.push_back({iv.lo, mid});
    stack.push_back({mid, iv.hi});
  }
  std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return out;
}

Interval refine_root(const UniPoly& p, Interval root, const Rational& width) {
  const UniPoly q = squarefree_part(p);
  while (root.hi - root.lo > width) {
    Rational mid = (root.lo + root.hi) / 2;
    const int s_mid = sgn(q.evaluate(mid));
    if (s_mid == 0) return {mid, mid};
    const int s_hi = sgn(q.evaluate(root.hi));
    if (s_hi == 0) return {root.hi, root.hi};
    // A simple root sits where the sign changes.
    if (s_mid != s_hi) root.lo = mid;
    else root.hi = mid;
  }
  return root;
}

Interval interval_evaluate(const UniPoly& p, const Interval& x) {
  Interval acc{0, 0};
  const auto& c = p.coeffs();
  for (size_t k = c.size(); k-- > 0;) {
    Rational cands[4] = {acc.lo * x.lo, acc.lo * x.hi, acc.hi * x.lo, acc.hi * x.hi};
    Rational lo = cands[0], hi = cands[0];
    for (const auto& v : cands) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
    acc = {lo + c[k], hi + c[k]};
  }
  return acc;
}

}  // namespace exactsos
