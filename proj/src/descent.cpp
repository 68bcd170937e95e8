#include "exactsos/descent.hpp"

#include "exactsos/polyalg.hpp"

namespace exactsos {

namespace {

VarList extend_vars(const VarList& vars, std::initializer_list<std::string> extra) {
  std::vector<std::string> names = *vars;
  for (const auto& e : extra) {
    for (const auto& n : names) {
      if (n == e) throw Error("variable name '" + e + "' is reserved here");
    }
    names.push_back(e);
  }
  return make_vars(std::move(names));
}

Exponents padded(const Exponents& e, size_t n) {
  Exponents r = e;
  r.resize(n, 0);
  return r;
}

AlgebraicNumber gaussian(const Rational& re, const Rational& im) {
  return AlgebraicNumber(gaussian_field(), {re, im});
}

QPoly rational_part(const NfPoly& p) {
  QPoly r(p.vars());
  for (const auto& [e, c] : p.terms()) {
    if (!c.is_rational()) throw Error("polynomial has non-rational coefficients");
    r.add_term(e, c.coord(0));
  }
  return r;
}

NfPoly lift(const QPoly& p) {
  return p.map_coefficients([](const Rational& q) { return AlgebraicNumber(q); });
}

QPoly power(const QPoly& f, size_t k) { return f.pow(static_cast<unsigned>(k)); }

}  // namespace

FieldPtr gaussian_field() {
  static const FieldPtr field = NumberField::make(UniPoly({Rational(1), Rational(0), Rational(1)}), "I");
  return field;
}

NfPoly to_gaussian(const GaussianPoly<Rational>& g) {
  NfPoly out(g.re.nvars() >= g.im.nvars() ? g.re.vars() : g.im.vars());
  for (const auto& [e, c] : g.re.terms()) out.add_term(e, gaussian(c, 0));
  for (const auto& [e, c] : g.im.terms()) out.add_term(e, gaussian(0, c));
  return out;
}

GaussianPoly<Rational> from_gaussian(const NfPoly& p) {
  GaussianPoly<Rational> g{QPoly(p.vars()), QPoly(p.vars())};
  for (const auto& [e, c] : p.terms()) {
    if (c.field() && !c.field()->same_as(*gaussian_field()) && !c.is_rational()) {
      throw Error("coefficient outside Q(I)");
    }
    g.re.add_term(e, c.coord(0));
    g.im.add_term(e, c.coord(1));
  }
  return g;
}

NfPoly gaussian_conjugate(const NfPoly& p) {
  GaussianPoly<Rational> g = from_gaussian(p);
  g.im = Rational(-1) * g.im;
  return to_gaussian(g);
}

ConjugateProduct conjugate_product(const NfPoly& p1, const NfPoly& p2, const FieldPtr& field) {
  const VarList vars = p1.nvars() >= p2.nvars() ? p1.vars() : p2.vars();
  ConjugateProduct out;
  out.f = rational_part(p1 * p1 + p2 * p2);
  const size_t d = field ? field->degree() : 1;
  out.degree = d;
  if (d % 2 == 0) throw Error("conjugate product needs an extension of odd degree");
  if (d == 1) {
    out.P1 = rational_part(p1);
    out.P2 = rational_part(p2);
  } else {
    // Polynomials in (vars, Z, I): a -> Z, then Res_Z(m, p1 + I p2).
    const VarList ext = extend_vars(vars, {"Z", "I"});
    const size_t n = vars->size(), zi = n, ii = n + 1;
    QPoly g(ext);
    auto absorb = [&](const NfPoly& p, bool imaginary) {
      for (const auto& [e, c] : p.terms()) {
        for (size_t k = 0; k < d; ++k) {
          const Rational q = c.coord(k);
          if (q == 0) continue;
          Exponents ee = padded(e, n + 2);
          ee[zi] = static_cast<unsigned>(k);
          ee[ii] = imaginary ? 1 : 0;
          g.add_term(ee, q);
        }
      }
    };
    absorb(p1, false);
    absorb(p2, true);
    QPoly m(ext);
    const UniPoly& mp = field->minpoly();
    for (size_t k = 0; k <= d; ++k) {
      if (mp.coeff(k) == 0) continue;
      Exponents ee(n + 2, 0);
      ee[zi] = static_cast<unsigned>(k);
      m.add_term(ee, mp.coeff(k));
    }
    const unsigned gz = g.degree_in(zi);
    const QPoly res = resultant_in(m, g, zi);
    Rational norm = 1;
    for (unsigned k = 0; k < gz; ++k) norm *= mp.leading();
    out.P1 = QPoly(vars);
    out.P2 = QPoly(vars);
    for (const auto& [e, c] : res.terms()) {
      const unsigned ie = e[ii];
      const Rational v = Rational(((ie / 2) % 2 == 0) ? c : Rational(-c)) / norm;
      Exponents base(e.begin(), e.begin() + static_cast<long>(n));
      (ie % 2 == 0 ? out.P1 : out.P2).add_term(base, v);
    }
  }
  if (!(power(out.f, d) == out.P1 * out.P1 + out.P2 * out.P2)) {
    throw Error("internal: f^d != P1^2 + P2^2 after the conjugate product");
  }
  return out;
}

std::optional<QPoly> polynomial_sqrt(const QPoly& r) {
  if (r.is_zero()) return r;
  const Rational lc = r.leading_coefficient();
  if (lc < 0) return std::nullopt;
  if (!mpz_perfect_square_p(lc.get_num_mpz_t()) || !mpz_perfect_square_p(lc.get_den_mpz_t())) return std::nullopt;
  Integer num, den;
  mpz_sqrt(num.get_mpz_t(), lc.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), lc.get_den_mpz_t());
  Exponents lead = r.leading_monomial();
  for (auto& x : lead) {
    if (x % 2) return std::nullopt;
    x /= 2;
  }
  QPoly s = QPoly::monomial(r.vars(), lead, Rational(num, den));
  const Rational two_lc = Rational(2) * s.leading_coefficient();
  // Each step fixes the leading term of r - s^2, which is 2 lt(s) t.
  while (true) {
    const QPoly rem = r - s * s;
    if (rem.is_zero()) return s;
    const Exponents& re = rem.leading_monomial();
    Exponents t(re.size());
    for (size_t i = 0; i < re.size(); ++i) {
      if (re[i] < lead[i]) return std::nullopt;
      t[i] = re[i] - lead[i];
    }
    if (!grlex_less(t, lead)) return std::nullopt;
    s.add_term(t, rem.leading_coefficient() / two_lc);
  }
}

DescentResult two_square_descent(const QPoly& f, const QPoly& P1, const QPoly& P2, size_t d,
                                 const DescentOptions& options) {
  if (d % 2 == 0) throw Error("two-squares descent needs an odd exponent");
  if (!(power(f, d) == P1 * P1 + P2 * P2)) throw Error("f^d != P1^2 + P2^2");
  DescentResult out;
  out.denominator_power = static_cast<unsigned>((d - 1) / 2);
  auto finish = [&](QPoly q1, QPoly q2) {
    if (!(q1 * q1 + q2 * q2 == f)) return false;
    out.q1 = std::move(q1);
    out.q2 = std::move(q2);
    out.complete = true;
    return true;
  };

  const QPoly fk = power(f, out.denominator_power);
  if (auto a = divide_exact(P1, fk)) {
    if (auto b = divide_exact(P2, fk)) {
      if (finish(*a, *b)) {
        out.fast_path = true;
        return out;
      }
    }
  }
  if (f.is_zero()) {
    out.note = "f is zero";
    return out;
  }

  int depth = 0;
  auto budget = [&]() { return ++depth <= options.max_depth; };
  const NfPoly G = to_gaussian({P1, P2});
  const NfPoly Gc = gaussian_conjugate(G);
  const NfPoly F = lift(f);
  if (!budget()) return out;
  const NfPoly c = mv_gcd(G, Gc);
  const auto G1 = divide_exact(G, c);
  if (!G1 || !budget()) {
    out.note = "gcd extraction failed";
    return out;
  }
  const NfPoly g = mv_gcd(*G1, F);
  const auto rest = divide_exact(F, g * gaussian_conjugate(g));
  if (!rest) {
    out.note = "f is not divisible by the norm of the extracted factor";
    return out;
  }
  const GaussianPoly<Rational> rg = from_gaussian(*rest);
  if (!rg.im.is_zero()) {
    out.note = "cofactor is not rational";
    return out;
  }
  const QPoly r = (Rational(1) / rg.re.leading_coefficient()) * rg.re;
  const auto s = polynomial_sqrt(r);
  if (!s) {
    out.note = "cofactor is not a square";
    return out;
  }
  // H = g s is monic; its norm is f / lc(f). mu = lc(G) / lc(f)^k has norm lc(f).
  const AlgebraicNumber mu = G.leading_coefficient() / AlgebraicNumber(fk.leading_coefficient());
  const NfPoly H = (mu * g) * lift(*s);
  const GaussianPoly<Rational> q = from_gaussian(H);
  if (!finish(q.re, q.im)) out.note = "extracted factor does not reproduce f";
  return out;
}

ThreeSquares gen_three_squares(const QPoly& a3, const QPoly& b1, const QPoly& b2, const QPoly& b3, const QPoly& c1,
                               const QPoly& c2, const QPoly& c3) {
  ThreeSquares out;
  out.field = NumberField::make(UniPoly({Rational(-2), Rational(0), Rational(0), Rational(1)}), "a", 0);
  out.delta = b1 * c2 - b2 * c1;
  if (out.delta.is_zero()) throw Error("b1 c2 - b2 c1 vanishes");
  // B = 0 and C = 0 as 2 a1 b1 + 2 a2 b2 = R1, 2 a1 c1 + 2 a2 c2 = R2.
  const QPoly r1 = Rational(-2) * (a3 * b3) - Rational(2) * (c1 * c1 + c2 * c2 + c3 * c3);
  const QPoly r2 = Rational(-2) * (a3 * c3) - (b1 * b1 + b2 * b2 + b3 * b3);
  out.a1_num = r1 * c2 - b2 * r2;
  out.a2_num = b1 * r2 - c1 * r1;
  const QPoly two_delta = Rational(2) * out.delta;
  const AlgebraicNumber al = AlgebraicNumber::generator(out.field);
  const AlgebraicNumber al2 = al * al;
  auto make = [&](const QPoly& a, const QPoly& b, const QPoly& c) {
    return lift(a) + al * lift(b) + al2 * lift(c);
  };
  out.p1 = make(out.a1_num, two_delta * b1, two_delta * c1);
  out.p2 = make(out.a2_num, two_delta * b2, two_delta * c2);
  out.p3 = make(two_delta * a3, two_delta * b3, two_delta * c3);
  const NfPoly sum = out.p1 * out.p1 + out.p2 * out.p2 + out.p3 * out.p3;
  for (const auto& [e, c] : sum.terms()) {
    if (!c.is_rational()) throw Error("internal: a or a^2 component survived in the sum of squares");
  }
  out.f = rational_part(sum);
  return out;
}

}  // namespace exactsos
