#include "exactsos/gram.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace exactsos {

std::optional<size_t> MonomialBasis::index_of(const Exponents& e) const {
  auto it = std::find(entries.begin(), entries.end(), e);
  if (it == entries.end()) return std::nullopt;
  return static_cast<size_t>(it - entries.begin());
}

MonomialBasis monomial_basis(const VarList& vars, unsigned d) {
  const size_t n = vars->size();
  if (n == 0) throw Error("monomial basis needs at least one variable");
  std::vector<Exponents> out;
  Exponents e(n, 0);
  // Compositions of d into n parts, generated in decreasing lex order.
  auto rec = [&](auto&& self, size_t i, unsigned left) -> void {
    if (i + 1 == n) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return {vars, std::move(out)};
}

GramPencil<Rational> build_pencil(const QPoly& f, const std::optional<MonomialBasis>& given) {
  if (f.is_zero()) throw Error("cannot build a Gram pencil for the zero polynomial");
  if (!f.is_homogeneous()) throw Error("polynomial is not homogeneous");
  if (f.degree() % 2 != 0) throw Error("polynomial has odd degree");
  MonomialBasis basis = given ? *given : monomial_basis(f.vars(), static_cast<unsigned>(f.degree() / 2));
  if (given) {
    if (basis.vars->size() != f.nvars()) throw Error("basis and polynomial use different variables");
    for (size_t i = 0; i < basis.size(); ++i) {
      if (basis.entries[i].size() != f.nvars()) throw Error("basis exponent of the wrong length");
      for (size_t j = 0; j < i; ++j) {
        if (basis.entries[i] == basis.entries[j]) throw Error("repeated basis monomial");
      }
    }
    std::sort(basis.entries.begin(), basis.entries.end(), GrlexGreater());
  }
  const size_t m = basis.size();

  // Entries (i <= j) grouped by the monomial x^(e_i + e_j), in row-major order.
  std::map<Exponents, std::vector<std::pair<size_t, size_t>>, GrlexGreater> classes;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i; j < m; ++j) {
      Exponents s(f.nvars());
      for (size_t v = 0; v < s.size(); ++v) s[v] = basis.entries[i][v] + basis.entries[j][v];
      classes[s].emplace_back(i, j);
    }
  }
  for (const auto& [e, c] : f.terms()) {
    if (!classes.count(e)) throw Error("monomial " + monomial_string(e, *f.vars()) + " is not reachable from the basis");
  }

  // Representative of each class: its diagonal entry if any, else the first.
  std::map<std::pair<size_t, size_t>, std::pair<size_t, size_t>> rep_of;
  for (const auto& [e, cells] : classes) {
    auto rep = cells.front();
    for (const auto& c : cells) {
      if (c.first == c.second) rep = c;
    }
    for (const auto& c : cells) rep_of[c] = rep;
  }

  Matrix<Rational> constant(m, m);
  for (const auto& [e, cells] : classes) {
    auto rep = rep_of[cells.front()];
    const Rational w = rep.first == rep.second ? 1 : 2;
    const Rational v = f.coefficient(e) / w;
    constant(rep.first, rep.second) = v;
    constant(rep.second, rep.first) = v;
  }

  std::vector<Matrix<Rational>> dirs;
  std::vector<std::string> names;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i; j < m; ++j) {
      const auto rep = rep_of[{i, j}];
      if (rep == std::make_pair(i, j)) continue;
      Matrix<Rational> d(m, m);
      d(i, j) = 1;
      d(j, i) = 1;
      const Rational wij = i == j ? 1 : 2;
      const Rational wrep = rep.first == rep.second ? 1 : 2;
      const Rational coef = -wij / wrep;
      d(rep.first, rep.second) = coef;
      d(rep.second, rep.first) = coef;
      dirs.push_back(std::move(d));
      names.push_back("a" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    }
  }
  return GramPencil<Rational>(std::move(basis), std::move(constant), std::move(dirs), std::move(names));
}

template <class K>
MultiPoly<K> gram_form(const MonomialBasis& basis, const Matrix<K>& m) {
  MultiPoly<K> out(basis.vars);
  const size_t n = basis.vars->size();
  Exponents s(n);
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = 0; j < basis.size(); ++j) {
      if (is_zero(m(i, j))) continue;
      for (size_t v = 0; v < n; ++v) s[v] = basis.entries[i][v] + basis.entries[j][v];
      out.add_term(s, m(i, j));
    }
  }
  return out;
}

template <class K>
std::vector<K> random_parameters(size_t k, std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  std::vector<K> t;
  t.reserve(k);
  for (size_t j = 0; j < k; ++j) t.push_back(K(Rational(dist(rng))));
  return t;
}

std::vector<size_t> exact_pivots(const Matrix<Rational>& m) {
  return bareiss_pivot_columns(m);
}

std::vector<size_t> exact_pivots(const Matrix<AlgebraicNumber>& m) {
  return pivot_columns(m);
}

template <class K>
size_t generic_rank(const GramPencil<K>& p, std::mt19937_64& rng, int draws, long bound) {
  if (p.is_empty()) return 0;
  size_t best = 0;
  for (int d = 0; d < std::max(draws, 1); ++d) {
    const auto w = p.evaluate(random_parameters<K>(p.num_params(), rng, bound));
    best = std::max(best, exact_pivots(w).size());
    if (p.num_params() == 0) break;
  }
  return best;
}

GramPencil<AlgebraicNumber> lift_pencil(const GramPencil<Rational>& p) {
  auto lift = [](const Matrix<Rational>& a) {
    Matrix<AlgebraicNumber> b(a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
      for (size_t j = 0; j < a.cols(); ++j) b(i, j) = AlgebraicNumber(a(i, j));
    }
    return b;
  };
  if (p.is_empty()) return GramPencil<AlgebraicNumber>::empty(p.basis());
  std::vector<Matrix<AlgebraicNumber>> dirs;
  for (const auto& d : p.directions()) dirs.push_back(lift(d));
  return GramPencil<AlgebraicNumber>(p.basis(), lift(p.constant()), std::move(dirs), p.param_names());
}

std::optional<GramPencil<Rational>> lower_pencil(const GramPencil<AlgebraicNumber>& p) {
  auto lower = [](const Matrix<AlgebraicNumber>& a) -> std::optional<Matrix<Rational>> {
    Matrix<Rational> b(a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
      for (size_t j = 0; j < a.cols(); ++j) {
        if (!a(i, j).is_rational()) return std::nullopt;
        b(i, j) = a(i, j).coord(0);
      }
    }
    return b;
  };
  if (p.is_empty()) return GramPencil<Rational>::empty(p.basis());
  auto c = lower(p.constant());
  if (!c) return std::nullopt;
  std::vector<Matrix<Rational>> dirs;
  for (const auto& d : p.directions()) {
    auto l = lower(d);
    if (!l) return std::nullopt;
    dirs.push_back(std::move(*l));
  }
  return GramPencil<Rational>(p.basis(), std::move(*c), std::move(dirs), p.param_names());
}

std::string dump_pencil(const GramPencil<Rational>& p) {
  std::ostringstream out;
  out << "size " << p.size() << " params " << p.num_params() << "\n";
  out << "basis";
  for (size_t i = 0; i < p.size(); ++i) out << (i ? ", " : " ") << p.basis().monomial(i);
  out << "\n";
  auto block = [&](const std::string& title, const Matrix<Rational>& m) {
    out << title << "\n";
    for (size_t i = 0; i < m.rows(); ++i) {
      for (size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << to_string(m(i, j));
      out << "\n";
    }
  };
  if (p.is_empty()) {
    out << "empty\n";
    return out.str();
  }
  block("constant", p.constant());
  for (size_t j = 0; j < p.num_params(); ++j) block("direction " + p.param_names()[j], p.direction(j));
  return out.str();
}

template MultiPoly<Rational> gram_form(const MonomialBasis&, const Matrix<Rational>&);
template MultiPoly<AlgebraicNumber> gram_form(const MonomialBasis&, const Matrix<AlgebraicNumber>&);
template std::vector<Rational> random_parameters(size_t, std::mt19937_64&, long);
template std::vector<AlgebraicNumber> random_parameters(size_t, std::mt19937_64&, long);
template size_t generic_rank(const GramPencil<Rational>&, std::mt19937_64&, int, long);
template size_t generic_rank(const GramPencil<AlgebraicNumber>&, std::mt19937_64&, int, long);

}  // namespace exactsos
