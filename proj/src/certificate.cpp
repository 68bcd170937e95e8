#include "exactsos/certificate.hpp"

#include <sstream>

#include "exactsos/parser.hpp"

namespace exactsos {

Rational best_rational(double x, const Integer& max_den) {
  if (max_den < 1) throw Error("denominator bound must be at least 1");
  const Rational q = rational_from_double(x);
  if (q.get_den() <= max_den) return q;
  // Convergents p0/q0, p1/q1 of the continued fraction of n/d.
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer n = q.get_num(), d = q.get_den();
  while (true) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    const Integer q2 = q0 + a * q1;
    if (q2 > max_den) break;
    const Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const Integer r = n - a * d;
    n = d;
    d = r;
    if (d == 0) break;
  }
  const Integer k = (max_den - q0) / q1;
  const Rational semi(p0 + k * p1, q0 + k * q1), conv(p1, q1);
  Rational ds = abs(semi - q), dc = abs(conv - q);
  return ds < dc ? Rational(semi) : Rational(conv);
}

std::vector<Rational> round_params(const std::vector<double>& t, const Integer& max_den) {
  std::vector<Rational> out;
  out.reserve(t.size());
  for (double x : t) out.push_back(best_rational(x, max_den));
  return out;
}

template <class K>
size_t Ldl<K>::rank() const {
  size_t r = 0;
  for (const auto& x : d) {
    if (!is_zero(x)) ++r;
  }
  return r;
}

template <class K>
LdlResult<K> ldl_decompose(const Matrix<K>& m) {
  if (!m.is_symmetric()) throw Error("LDL of a non-symmetric matrix");
  const size_t n = m.rows();
  LdlResult<K> res;
  Ldl<K>& l = res.ldl;
  l.perm.resize(n);
  for (size_t i = 0; i < n; ++i) l.perm[i] = i;
  l.u = Matrix<K>::identity(n);
  l.d.assign(n, K(0));
  Matrix<K> s = m;

  // w with U w = y, where rows >= k of U are still the identity.
  auto solve_witness = [&](size_t k, std::vector<K> y) {
    for (size_t i = k; i-- > 0;) {
      K acc = y[i];
      for (size_t j = i + 1; j < n; ++j) {
        if (!is_zero(l.u(i, j)) && !is_zero(y[j])) acc = acc - l.u(i, j) * y[j];
      }
      y[i] = acc;
    }
    return y;
  };

  for (size_t k = 0; k < n; ++k) {
    const K p = s(k, k);
    const int sp = sign(p);
    if (sp < 0) {
      std::vector<K> y(n, K(0));
      y[k] = K(1);
      res.witness = solve_witness(k, std::move(y));
      return res;
    }
    if (sp == 0) {
      for (size_t j = k + 1; j < n; ++j) {
        if (is_zero(s(k, j))) continue;
        // (tau e_k + e_j)^T S (tau e_k + e_j) = 2 tau S_kj + S_jj = -1.
        std::vector<K> y(n, K(0));
        y[k] = K(K(0) - (s(j, j) + K(1))) / K(K(2) * s(k, j));
        y[j] = K(1);
        res.witness = solve_witness(k, std::move(y));
        return res;
      }
      continue;
    }
    l.d[k] = p;
    const K inv = K(1) / p;
    for (size_t j = k + 1; j < n; ++j) l.u(k, j) = s(k, j) * inv;
    for (size_t i = k + 1; i < n; ++i) {
      if (is_zero(s(k, i))) continue;
      for (size_t j = i; j < n; ++j) {
        if (is_zero(l.u(k, j))) continue;
        s(i, j) = s(i, j) - s(k, i) * l.u(k, j);
        s(j, i) = s(i, j);
      }
    }
  }
  res.psd = true;
  return res;
}

template <class K>
Matrix<K> ldl_reconstruct(const Ldl<K>& l) {
  const size_t n = l.u.rows();
  Matrix<K> a(n, n);
  for (size_t r = 0; r < n; ++r) {
    if (is_zero(l.d[r])) continue;
    for (size_t i = r; i < n; ++i) {
      if (is_zero(l.u(r, i))) continue;
      const K di = l.d[r] * l.u(r, i);
      for (size_t j = r; j < n; ++j) {
        if (!is_zero(l.u(r, j))) a(i, j) = a(i, j) + di * l.u(r, j);
      }
    }
  }
  Matrix<K> out(n, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) out(l.perm[i], l.perm[j]) = a(i, j);
  }
  return out;
}

template <class K>
bool charpoly_sign_check(const Matrix<K>& m) {
  const auto cp = berkowitz_charpoly(m);
  size_t k = 0;
  while (k < cp.size() && is_zero(cp[k])) ++k;
  if (k == cp.size()) return false;
  const size_t s = cp.size() - 1 - k;
  for (size_t j = 0; j <= s; ++j) {
    const int want = (s - j) % 2 == 0 ? 1 : -1;
    if (sign(cp[k + j]) != want) return false;
  }
  return true;
}

bool Certificate::is_rational() const {
  for (const auto& c : coefficients) {
    if (!c.is_rational()) return false;
  }
  for (const auto& p : polynomials) {
    for (const auto& [e, c] : p.terms()) {
      if (!c.is_rational()) return false;
    }
  }
  return true;
}

namespace {

AlgebraicNumber to_algebraic(const Rational& q) { return AlgebraicNumber(q); }
AlgebraicNumber to_algebraic(const AlgebraicNumber& a) { return a; }

FieldPtr field_of(const Matrix<AlgebraicNumber>& m) {
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_rational()) return m(i, j).field();
    }
  }
  return nullptr;
}

}  // namespace

template <class K>
Certificate extract_certificate(const Matrix<K>& m, const MonomialBasis& basis) {
  if (m.rows() != basis.size()) throw Error("Gram matrix and basis sizes differ");
  const auto res = ldl_decompose(m);
  if (!res.psd) throw Error("matrix is not positive semidefinite");
  Certificate c;
  c.vars = basis.vars;
  c.basis = basis;
  c.gram = Matrix<AlgebraicNumber>(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) c.gram(i, j) = to_algebraic(m(i, j));
  }
  c.field = field_of(c.gram);
  const auto& l = res.ldl;
  for (size_t r = 0; r < m.rows(); ++r) {
    if (is_zero(l.d[r])) continue;
    NfPoly p(basis.vars);
    for (size_t j = r; j < m.rows(); ++j) {
      if (!is_zero(l.u(r, j))) p.add_term(basis.entries[l.perm[j]], to_algebraic(l.u(r, j)));
    }
    c.coefficients.push_back(to_algebraic(l.d[r]));
    c.polynomials.push_back(std::move(p));
  }
  return c;
}

Certificate certificate_from_squares(std::vector<AlgebraicNumber> coefficients, std::vector<NfPoly> polynomials,
                                     FieldPtr field) {
  if (coefficients.size() != polynomials.size()) throw Error("coefficient and polynomial counts differ");
  if (polynomials.empty()) throw Error("certificate without squares");
  const VarList vars = polynomials.front().vars();
  int deg = -1;
  for (const auto& p : polynomials) {
    if (p.is_zero()) continue;
    if (!p.is_homogeneous()) throw Error("squares must be homogeneous");
    if (deg >= 0 && p.degree() != deg) throw Error("squares of different degrees");
    deg = p.degree();
  }
  if (deg < 0) throw Error("all squares are zero");
  Certificate c;
  c.field = field;
  c.vars = vars;
  c.basis = monomial_basis(vars, static_cast<unsigned>(deg));
  const size_t m = c.basis.size();
  c.gram = Matrix<AlgebraicNumber>(m, m);
  for (size_t k = 0; k < polynomials.size(); ++k) {
    std::vector<AlgebraicNumber> u(m, AlgebraicNumber(0));
    for (const auto& [e, v] : polynomials[k].terms()) {
      const auto idx = c.basis.index_of(e);
      if (!idx) throw Error("square has a monomial outside the basis");
      u[*idx] = v;
    }
    for (size_t i = 0; i < m; ++i) {
      if (u[i].is_zero()) continue;
      for (size_t j = 0; j < m; ++j) {
        if (!u[j].is_zero()) c.gram(i, j) += coefficients[k] * u[i] * u[j];
      }
    }
  }
  c.coefficients = std::move(coefficients);
  c.polynomials = std::move(polynomials);
  return c;
}

bool verify_certificate(const Certificate& cert, const NfPoly& f) {
  if (!cert.vars || !f.vars() || *cert.vars != *f.vars()) return false;
  if (cert.coefficients.size() != cert.polynomials.size()) return false;
  NfPoly sum(cert.vars);
  for (size_t i = 0; i < cert.coefficients.size(); ++i) {
    if (sign(cert.coefficients[i]) <= 0) return false;
    sum += cert.coefficients[i] * (cert.polynomials[i] * cert.polynomials[i]);
  }
  if (!(sum == f)) return false;
  if (cert.gram.rows() != cert.basis.size() || !cert.gram.is_symmetric()) return false;
  return gram_form(cert.basis, cert.gram) == f;
}

bool verify_certificate(const Certificate& cert, const QPoly& f) {
  return verify_certificate(cert, f.map_coefficients([](const Rational& q) { return AlgebraicNumber(q); }));
}

std::string serialize(const Certificate& cert) {
  std::ostringstream out;
  out << "exactsos-certificate v1\n";
  out << "vars: ";
  for (size_t i = 0; i < cert.vars->size(); ++i) out << (i ? ", " : "") << (*cert.vars)[i];
  out << "\n";
  if (cert.field) {
    out << "field: " << cert.field->generator() << ", minpoly: " << cert.field->minpoly().to_string("Z");
    if (cert.field->embedding_index()) out << ", root: " << *cert.field->embedding_index();
    out << "\n";
  }
  out << "coefficients: ";
  for (size_t i = 0; i < cert.coefficients.size(); ++i) out << (i ? "; " : "") << to_string(cert.coefficients[i]);
  out << "\n";
  for (const auto& p : cert.polynomials) out << "polynomial: " << p.to_string() << "\n";
  out << "basis: ";
  for (size_t i = 0; i < cert.basis.size(); ++i) out << (i ? ", " : "") << cert.basis.monomial(i);
  out << "\n";
  for (size_t i = 0; i < cert.gram.rows(); ++i) {
    out << "gram: ";
    for (size_t j = 0; j < cert.gram.cols(); ++j) out << (j ? ", " : "") << to_string(cert.gram(i, j));
    out << "\n";
  }
  return out.str();
}

Certificate parse_certificate(std::string_view text) {
  Certificate c;
  std::vector<std::string> coeff_text, poly_text, basis_text;
  std::vector<std::vector<std::string>> gram_text;
  bool header = false;
  for (const auto& raw : split(text, '\n')) {
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (!header) {
      if (line != "exactsos-certificate v1") throw Error("not an exactsos certificate (missing header line)");
      header = true;
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw Error("certificate line without key: " + line);
    const std::string key = trim(line.substr(0, colon)), value = trim(line.substr(colon + 1));
    if (key == "vars") c.vars = parse_variable_list(value);
    else if (key == "field") c.field = parse_field_header(line);
    else if (key == "coefficients") coeff_text = split(value, ';');
    else if (key == "polynomial") poly_text.push_back(value);
    else if (key == "basis") basis_text = split(value, ',');
    else if (key == "gram") gram_text.push_back(split(value, ','));
    else throw Error("unknown certificate key '" + key + "'");
  }
  if (!header) throw Error("empty certificate");
  if (!c.vars) throw Error("certificate without vars");
  for (const auto& t : coeff_text) {
    const NfPoly v = parse_nf_polynomial(t, c.vars, c.field);
    if (!v.is_constant()) throw Error("certificate coefficient is not a constant: " + t);
    c.coefficients.push_back(v.constant_term());
  }
  for (const auto& t : poly_text) c.polynomials.push_back(parse_nf_polynomial(t, c.vars, c.field));
  if (c.coefficients.size() != c.polynomials.size()) throw Error("coefficient and polynomial counts differ");
  for (const auto& t : basis_text) {
    const NfPoly mono = parse_nf_polynomial(t, c.vars, c.field);
    if (mono.term_count() != 1 || !(mono.leading_coefficient() == AlgebraicNumber(1))) {
      throw Error("basis entry is not a monomial: " + t);
    }
    c.basis.entries.push_back(mono.leading_monomial());
  }
  c.basis.vars = c.vars;
  const size_t m = c.basis.size();
  if (gram_text.size() != m) throw Error("gram matrix has the wrong number of rows");
  c.gram = Matrix<AlgebraicNumber>(m, m);
  for (size_t i = 0; i < m; ++i) {
    if (gram_text[i].size() != m) throw Error("gram row of the wrong length");
    for (size_t j = 0; j < m; ++j) {
      const NfPoly v = parse_nf_polynomial(gram_text[i][j], c.vars, c.field);
      if (!v.is_constant()) throw Error("gram entry is not a constant");
      c.gram(i, j) = v.constant_term();
    }
  }
  return c;
}

template struct Ldl<Rational>;
template struct Ldl<AlgebraicNumber>;
template LdlResult<Rational> ldl_decompose(const Matrix<Rational>&);
template LdlResult<AlgebraicNumber> ldl_decompose(const Matrix<AlgebraicNumber>&);
template Matrix<Rational> ldl_reconstruct(const Ldl<Rational>&);
template Matrix<AlgebraicNumber> ldl_reconstruct(const Ldl<AlgebraicNumber>&);
template bool charpoly_sign_check(const Matrix<Rational>&);
template bool charpoly_sign_check(const Matrix<AlgebraicNumber>&);
template Certificate extract_certificate(const Matrix<Rational>&, const MonomialBasis&);
template Certificate extract_certificate(const Matrix<AlgebraicNumber>&, const MonomialBasis&);

}  // namespace exactsos
