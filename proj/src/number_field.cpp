#include "exactsos/number_field.hpp"

#include <cstdint>
#include <numeric>
#include <set>

namespace exactsos {

namespace {

// ---- polynomials over F_p for the irreducibility screen ----

using ModPoly = std::vector<int64_t>;  // ascending, trimmed

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int64_t mod_pow(int64_t b, int64_t e, int64_t p) {
  int64_t r = 1;
  b %= p;
  if (b < 0) b += p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

ModPoly mod_rem(ModPoly a, const ModPoly& m, int64_t p) {
  const int64_t inv = mod_pow(m.back(), p - 2, p);
  trim(a);
  while (a.size() >= m.size()) {
    const int64_t c = a.back() * inv % p;
    const size_t shift = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) {
      a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

ModPoly mod_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, int64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return mod_rem(std::move(r), m, p);
}

ModPoly mod_powmod(ModPoly base, Integer e, const ModPoly& m, int64_t p) {
  ModPoly r{1};
  base = mod_rem(std::move(base), m, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mod_mulmod(r, base, m, p);
    base = mod_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

ModPoly mod_gcd(ModPoly a, ModPoly b, int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = mod_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

ModPoly mod_sub(ModPoly a, const ModPoly& b, int64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
  trim(a);
  return a;
}

bool rabin_irreducible(const ModPoly& f, int64_t p) {
  const size_t n = f.size() - 1;
  const ModPoly x{0, 1};
  std::set<size_t> prime_factors;
  for (size_t q = 2, k = n; q <= k; ++q) {
    while (k % q == 0) {
      prime_factors.insert(q);
      k /= q;
    }
  }
  for (size_t q : prime_factors) {
    Integer e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), n / q);
    ModPoly h = mod_sub(mod_powmod(x, e, f, p), x, p);
    ModPoly g = mod_gcd(f, h, p);
    if (g.size() > 1) return false;
  }
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), n);
  return mod_sub(mod_powmod(x, e, f, p), mod_rem(x, f, p), p).empty();
}

std::vector<Integer> small_divisors(Integer n) {
  std::vector<Integer> out;
  n = abs(n);
  if (n == 0 || n > Integer(1000000000)) return out;
  const unsigned long v = n.get_ui();
  for (unsigned long d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      out.emplace_back(d);
      if (d * d != v) out.emplace_back(v / d);
    }
  }
  return out;
}

}  // namespace

NumberField::NumberField(UniPoly minpoly, std::string generator, std::optional<size_t> real_root)
    : minpoly_(std::move(minpoly)), generator_(std::move(generator)) {
  if (minpoly_.degree() < 1) throw Error("minimal polynomial must have degree >= 1");
  monic_ = minpoly_.monic();
  degree_ = static_cast<size_t>(minpoly_.degree());
  const size_t d = degree_;

  // Newton's identities on the monic associate Z^d + c_{d-1} Z^{d-1} + ... + c_0.
  power_traces_.assign(d, Rational(0));
  power_traces_[0] = static_cast<unsigned long>(d);
  for (size_t k = 1; k < d; ++k) {
    Rational s = Rational(static_cast<unsigned long>(k)) * monic_.coeff(d - k);
    for (size_t i = 1; i < k; ++i) s += monic_.coeff(d - i) * power_traces_[k - i];
    power_traces_[k] = -s;
  }

  reduced_powers_.resize(2 * d - 1);
  for (size_t k = 0; k < d; ++k) {
    reduced_powers_[k].assign(d, Rational(0));
    reduced_powers_[k][k] = 1;
  }
  for (size_t k = d; k + 1 < 2 * d; ++k) {
    const auto& prev = reduced_powers_[k - 1];
    std::vector<Rational> next(d, Rational(0));
    for (size_t i = 0; i + 1 < d; ++i) next[i + 1] = prev[i];
    const Rational top = prev[d - 1];
    for (size_t i = 0; i < d; ++i) next[i] -= top * monic_.coeff(i);
    reduced_powers_[k] = std::move(next);
  }

  auto roots = isolate_real_roots(minpoly_);
  real_roots_ = roots.size();
  if (real_root) {
    if (*real_root >= roots.size()) throw Error("requested real root index exceeds the real root count");
    embedding_index_ = real_root;
    embedding_ = roots[*real_root];
    const Interval fine = refine_root(minpoly_, *embedding_, Rational(1, 1) / Rational(Integer(1) << 80));
    root_value_ = Rational((fine.lo + fine.hi) / 2).get_d();
  }
}

const Interval& NumberField::embedding() const {
  if (!embedding_) throw Error("number field has no designated real embedding");
  return *embedding_;
}

double NumberField::root_value() const {
  if (!embedding_) throw Error("number field has no designated real embedding");
  return root_value_;
}

bool NumberField::same_as(const NumberField& other) const {
  return this == &other || monic_ == other.monic_;
}

NumberField::Irreducibility NumberField::check_irreducible() const {
  if (degree_ == 1) return Irreducibility::Certified;
  if (gcd(minpoly_, minpoly_.derivative()).degree() > 0) return Irreducibility::Reducible;
  const UniPoly prim = minpoly_.primitive();
  const Integer a0 = prim.coeff(0).get_num(), an = prim.leading().get_num();
  if (a0 == 0) return Irreducibility::Reducible;
  const auto ps = small_divisors(a0), qs = small_divisors(an);
  for (const auto& p : ps) {
    for (const auto& q : qs) {
      for (int s : {1, -1}) {
        if (sgn(prim.evaluate(Rational(Integer(s * p), q))) == 0) return Irreducibility::Reducible;
      }
    }
  }
  if (degree_ <= 3 && !ps.empty() && !qs.empty()) return Irreducibility::Certified;

  const Integer disc_guard = an;
  for (int64_t p = 3; p < 2000; p += 2) {
    bool is_prime = true;
    for (int64_t q = 3; q * q <= p; q += 2) {
      if (p % q == 0) {
        is_prime = false;
        break;
      }
    }
    if (!is_prime || mpz_divisible_ui_p(disc_guard.get_mpz_t(), static_cast<unsigned long>(p))) continue;
    ModPoly f(degree_ + 1);
    for (size_t i = 0; i <= degree_; ++i) {
      Integer c = prim.coeff(i).get_num() % Integer(p);
      if (c < 0) c += p;
      f[i] = c.get_si();
    }
    if (rabin_irreducible(f, p)) return Irreducibility::Certified;
  }
  return Irreducibility::Unknown;
}

// ---------------------------------------------------------------------------

AlgebraicNumber::AlgebraicNumber(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  if (!field_) {
    if (coords_.size() > 1) throw Error("coordinates beyond the constant term need a number field");
    if (coords_.empty()) coords_.push_back(Rational(0));
    return;
  }
  const size_t d = field_->degree();
  if (coords_.size() > d) {
    // Reduce a longer polynomial in the generator modulo m.
    UniPoly r = UniPoly::divmod(UniPoly(coords_), field_->monic_minpoly()).second;
    coords_ = r.coeffs();
  }
  coords_.resize(d, Rational(0));
}

AlgebraicNumber AlgebraicNumber::generator(const FieldPtr& field) {
  std::vector<Rational> c(field->degree(), Rational(0));
  if (field->degree() == 1) {
    c[0] = -field->monic_minpoly().coeff(0);
  } else {
    c[1] = 1;
  }
  return AlgebraicNumber(field, std::move(c));
}

bool AlgebraicNumber::is_zero() const {
  for (const auto& c : coords_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

bool AlgebraicNumber::is_rational() const {
  for (size_t i = 1; i < coords_.size(); ++i) {
    if (sgn(coords_[i]) != 0) return false;
  }
  return true;
}

Rational AlgebraicNumber::to_rational() const {
  if (!is_rational()) throw Error("algebraic number " + exactsos::to_string(*this) + " is not rational");
  return coords_[0];
}

FieldPtr AlgebraicNumber::common_field(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (!a.field_) return b.field_;
  if (!b.field_) return a.field_;
  if (a.field_ == b.field_ || a.field_->same_as(*b.field_)) return a.field_;
  throw Error("arithmetic between elements of different number fields");
}

void AlgebraicNumber::lift_to(const FieldPtr& field) {
  if (!field || field_ == field) return;
  if (field_ && !field_->same_as(*field)) throw Error("incompatible number fields");
  field_ = field;
  coords_.resize(field->degree(), Rational(0));
}

AlgebraicNumber AlgebraicNumber::operator-() const {
  AlgebraicNumber r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

const AlgebraicNumber& AlgebraicNumber::reconcile(const AlgebraicNumber& b, AlgebraicNumber& scratch) {
  if (!field_ || !b.field_ || field_ == b.field_ || field_->same_as(*b.field_)) return b;
  // A rational value may still carry a field from earlier arithmetic.
  if (b.is_rational()) {
    scratch = AlgebraicNumber(b.coords_[0]);
    return scratch;
  }
  if (is_rational()) {
    field_ = nullptr;
    coords_.resize(1);
  }
  return b;
}

AlgebraicNumber& AlgebraicNumber::operator+=(const AlgebraicNumber& other) {
  AlgebraicNumber scratch;
  const AlgebraicNumber& b = reconcile(other, scratch);
  const FieldPtr f = common_field(*this, b);
  lift_to(f);
  for (size_t i = 0; i < b.coords_.size(); ++i) coords_[i] += b.coords_[i];
  return *this;
}

AlgebraicNumber& AlgebraicNumber::operator-=(const AlgebraicNumber& other) {
  AlgebraicNumber scratch;
  const AlgebraicNumber& b = reconcile(other, scratch);
  const FieldPtr f = common_field(*this, b);
  lift_to(f);
  for (size_t i = 0; i < b.coords_.size(); ++i) coords_[i] -= b.coords_[i];
  return *this;
}

AlgebraicNumber& AlgebraicNumber::operator*=(const AlgebraicNumber& other) {
  AlgebraicNumber scratch;
  const AlgebraicNumber& b = reconcile(other, scratch);
  const FieldPtr f = common_field(*this, b);
  if (!f) {
    coords_[0] *= b.coords_[0];
    return *this;
  }
  if (!b.field_) {
    for (auto& c : coords_) c *= b.coords_[0];
    return *this;
  }
  if (!field_) {
    const Rational s = coords_[0];
    field_ = f;
    coords_ = b.coords_;
    for (auto& c : coords_) c *= s;
    return *this;
  }
  const size_t d = f->degree();
  std::vector<Rational> conv(2 * d - 1, Rational(0));
  for (size_t i = 0; i < d; ++i) {
    if (sgn(coords_[i]) == 0) continue;
    for (size_t j = 0; j < d; ++j) {
      if (sgn(b.coords_[j]) == 0) continue;
      conv[i + j] += coords_[i] * b.coords_[j];
    }
  }
  std::vector<Rational> out(conv.begin(), conv.begin() + static_cast<long>(d));
  for (size_t k = d; k < conv.size(); ++k) {
    if (sgn(conv[k]) == 0) continue;
    const auto& red = f->reduced_power(k);
    for (size_t i = 0; i < d; ++i) out[i] += conv[k] * red[i];
  }
  field_ = f;
  coords_ = std::move(out);
  return *this;
}

AlgebraicNumber AlgebraicNumber::inverse() const {
  if (is_zero()) throw Error("inverse of zero");
  if (!field_) return AlgebraicNumber(Rational(1) / coords_[0]);
  auto [g, s] = half_extended_gcd(UniPoly(coords_), field_->monic_minpoly());
  if (g.degree() != 0) throw Error("element is a zero divisor: the minimal polynomial is reducible");
  return AlgebraicNumber(field_, s.coeffs());
}

Rational nf_trace(const AlgebraicNumber& a) {
  if (!a.field()) return a.coords()[0];
  const auto& tr = a.field()->power_traces();
  Rational s = 0;
  for (size_t i = 0; i < tr.size(); ++i) s += a.coords()[i] * tr[i];
  return s;
}

Rational nf_trace(const AlgebraicNumber& a, const NumberField& field) {
  if (!a.field()) return a.coords()[0] * static_cast<unsigned long>(field.degree());
  if (!a.field()->same_as(field)) throw Error("trace taken in a foreign number field");
  return nf_trace(a);
}

UniPoly as_unipoly(const AlgebraicNumber& a) { return UniPoly(a.coords()); }

int sign(const AlgebraicNumber& a) {
  if (a.is_zero()) return 0;
  if (a.is_rational()) return sgn(a.coords()[0]);
  const NumberField& f = *a.field();
  const UniPoly g = as_unipoly(a);
  Interval root = f.embedding();
  const UniPoly m = squarefree_part(f.minpoly());
  // m is irreducible and a != 0, so g does not vanish at the root and the
  // enclosure eventually excludes zero.
  for (int iter = 0; iter < 4096; ++iter) {
    const Interval v = interval_evaluate(g, root);
    if (sgn(v.lo) > 0) return 1;
    if (sgn(v.hi) < 0) return -1;
    root = refine_root(m, root, (root.hi - root.lo) / 4);
    if (root.lo == root.hi) {
      return sgn(g.evaluate(root.lo));
    }
  }
  throw Error("sign determination did not converge");
}

double to_double(const AlgebraicNumber& a) {
  if (a.is_rational()) return a.coords()[0].get_d();
  return as_unipoly(a).evaluate(a.field()->root_value());
}

std::string to_string(const AlgebraicNumber& a) {
  if (a.is_rational()) return to_string(a.coords()[0]);
  return "(" + as_unipoly(a).to_string(a.field()->generator()) + ")";
}

}  // namespace exactsos
