#include "exactsos/facial.hpp"

#include <algorithm>
#include <functional>

#include "exactsos/compositum.hpp"
#include "exactsos/parser.hpp"

namespace exactsos {

std::string to_string(ConstraintOrigin o) {
  switch (o) {
    case ConstraintOrigin::PlainZero: return "plain-zero";
    case ConstraintOrigin::Conjugate: return "conjugate-coefficientwise";
    case ConstraintOrigin::Trace: return "trace";
    case ConstraintOrigin::DiagGhost: return "diag-ghost";
    case ConstraintOrigin::MinorGhost: return "minor-ghost";
    case ConstraintOrigin::RationalForcing: return "rational-forcing";
  }
  return "unknown";
}

bool ZeroPoint::is_rational() const {
  return std::all_of(coords.begin(), coords.end(), [](const AlgebraicNumber& c) { return c.is_rational(); });
}

ZeroPoint make_zero_point(const QPoly& f, std::vector<AlgebraicNumber> coords, FieldPtr field, std::string label) {
  if (coords.size() != f.nvars()) {
    throw Error("zero " + label + " has " + std::to_string(coords.size()) + " coordinates, expected " +
                std::to_string(f.nvars()));
  }
  if (std::all_of(coords.begin(), coords.end(), [](const AlgebraicNumber& c) { return c.is_zero(); })) {
    throw Error("zero " + label + " is the origin");
  }
  ZeroPoint z;
  z.field = field;
  z.label = std::move(label);
  z.real_roots = field ? field->real_root_count() : 1;
  if (z.real_roots == 0) throw Error("minimal polynomial of zero " + z.label + " has no real root");
  const AlgebraicNumber v = f.evaluate(coords);
  if (!v.is_zero()) throw Error("point " + z.label + " is not a zero of the polynomial (value " + to_string(v) + ")");
  z.coords = std::move(coords);
  return z;
}

std::vector<ZeroPoint> parse_zero_file(std::string_view text, const QPoly& f) {
  std::vector<ZeroPoint> out;
  size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::optional<std::string> minpoly, coords, root, label;
    std::string generator = "a";
    for (const auto& part : split(line, ';')) {
      if (part.empty()) continue;
      const auto colon = part.find(':');
      if (colon == std::string::npos) throw Error("zero file line " + std::to_string(line_no) + ": expected key: value");
      const std::string key = trim(part.substr(0, colon)), value = trim(part.substr(colon + 1));
      if (key == "minpoly") minpoly = value;
      else if (key == "coords") coords = value;
      else if (key == "root") root = value;
      else if (key == "generator") generator = value;
      else if (key == "label") label = value;
      else throw Error("zero file line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!coords) throw Error("zero file line " + std::to_string(line_no) + ": missing coords");
    FieldPtr field;
    if (minpoly) {
      const UniPoly m = parse_univariate(*minpoly, "Z");
      if (m.degree() < 1) throw Error("zero file line " + std::to_string(line_no) + ": constant minpoly");
      std::optional<size_t> r;
      if (root) r = static_cast<size_t>(std::stoul(*root));
      else if (real_root_count(m) > 0) r = 0;
      field = NumberField::make(m, generator, r);
    }
    std::vector<AlgebraicNumber> point;
    for (const auto& c : split(*coords, ',')) point.push_back(parse_algebraic(c, field));
    out.push_back(make_zero_point(f, std::move(point), field, label.value_or("line " + std::to_string(line_no))));
  }
  return out;
}

std::vector<AlgebraicNumber> monomial_vector(const MonomialBasis& basis, const std::vector<AlgebraicNumber>& z) {
  std::vector<AlgebraicNumber> out;
  out.reserve(basis.size());
  std::vector<std::vector<AlgebraicNumber>> powers(z.size());
  for (const auto& e : basis.entries) {
    AlgebraicNumber v(1);
    for (size_t i = 0; i < e.size(); ++i) {
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(AlgebraicNumber(1));
      while (pw.size() <= e[i]) pw.push_back(pw.back() * z[i]);
      if (e[i] > 0) v *= pw[e[i]];
    }
    out.push_back(v);
  }
  return out;
}

KernelConstraint<AlgebraicNumber> plain_constraint(const MonomialBasis& basis, const ZeroPoint& z) {
  return {monomial_vector(basis, z.coords), ConstraintOrigin::PlainZero};
}

std::vector<KernelConstraint<Rational>> conjugate_constraints(const MonomialBasis& basis, const ZeroPoint& z) {
  const auto v = monomial_vector(basis, z.coords);
  const size_t d = z.field ? z.field->degree() : 1;
  std::vector<KernelConstraint<Rational>> out;
  for (size_t p = 0; p < d; ++p) {
    std::vector<Rational> u(v.size());
    bool nonzero = false;
    for (size_t i = 0; i < v.size(); ++i) {
      u[i] = v[i].coord(p);
      nonzero = nonzero || sgn(u[i]) != 0;
    }
    if (nonzero) out.push_back({std::move(u), ConstraintOrigin::Conjugate});
  }
  return out;
}

std::optional<KernelConstraint<Rational>> trace_constraint(const MonomialBasis& basis, const ZeroPoint& z) {
  const auto v = monomial_vector(basis, z.coords);
  std::vector<Rational> u(v.size());
  bool nonzero = false;
  for (size_t i = 0; i < v.size(); ++i) {
    u[i] = z.field ? nf_trace(v[i], *z.field) : v[i].coord(0);
    nonzero = nonzero || sgn(u[i]) != 0;
  }
  if (!nonzero) return std::nullopt;
  return KernelConstraint<Rational>{std::move(u), ConstraintOrigin::Trace};
}

template <class K>
bool satisfied_identically(const GramPencil<K>& p, const std::vector<K>& u) {
  auto kills = [&](const Matrix<K>& m) {
    for (size_t r = 0; r < m.rows(); ++r) {
      K acc(0);
      for (size_t c = 0; c < m.cols(); ++c) {
        if (!is_zero(u[c]) && !is_zero(m(r, c))) acc = acc + m(r, c) * u[c];
      }
      if (!is_zero(acc)) return false;
    }
    return true;
  };
  if (!kills(p.constant())) return false;
  for (const auto& d : p.directions()) {
    if (!kills(d)) return false;
  }
  return true;
}

template <class K>
std::vector<KernelConstraint<K>> diag_ghosts(const GramPencil<K>& p) {
  std::vector<KernelConstraint<K>> out;
  if (p.is_empty()) return out;
  for (size_t k = 0; k < p.size(); ++k) {
    if (!p.entry_identically_zero(k, k)) continue;
    std::vector<K> e(p.size(), K(0));
    e[k] = K(1);
    if (!satisfied_identically(p, e)) out.push_back({std::move(e), ConstraintOrigin::DiagGhost});
  }
  return out;
}

template <class K>
std::vector<KernelConstraint<K>> minor_ghosts(const GramPencil<K>& p, std::vector<std::string>* warnings) {
  std::vector<KernelConstraint<K>> out;
  if (p.is_empty()) return out;
  const size_t m = p.size(), k = p.num_params();
  // A random point screens out minors that are not identically singular.
  std::mt19937_64 rng(0x5eed);
  const auto t = random_parameters<K>(k, rng);
  const Matrix<K> w = p.evaluate(t);
  for (size_t i = 0; i < m; ++i) {
    if (p.entry_identically_zero(i, i)) continue;
    for (size_t j = i + 1; j < m; ++j) {
      if (p.entry_identically_zero(j, j)) continue;
      if (!is_zero(K(w(i, i) * w(j, j) - w(i, j) * w(i, j)))) continue;
      const auto a = p.affine_entry(i, i), b = p.affine_entry(i, j), c = p.affine_entry(j, j);
      bool singular = true;
      for (size_t s = 0; s <= k && singular; ++s) {
        for (size_t r = s; r <= k; ++r) {
          const K coef = s == r ? K(a[s] * c[s] - b[s] * b[s]) : K(a[s] * c[r] + a[r] * c[s] - K(2) * b[s] * b[r]);
          if (!is_zero(coef)) {
            singular = false;
            break;
          }
        }
      }
      if (!singular) continue;
      // Kernel (-b, a) is parameter free iff b = lambda * a identically.
      size_t s0 = 0;
      while (is_zero(a[s0])) ++s0;
      const K lambda = b[s0] / a[s0];
      bool proportional = true;
      for (size_t s = 0; s <= k; ++s) {
        if (!(b[s] == lambda * a[s])) {
          proportional = false;
          break;
        }
      }
      if (!proportional) {
        if (warnings) {
          warnings->push_back("singular minor (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ") has a parameter-dependent kernel; skipped");
        }
        continue;
      }
      std::vector<K> u(m, K(0));
      u[i] = K(0) - lambda;
      u[j] = K(1);
      if (!satisfied_identically(p, u)) out.push_back({std::move(u), ConstraintOrigin::MinorGhost});
    }
  }
  return out;
}

template <class K>
GramPencil<K> apply_parameter_equations(const GramPencil<K>& p, const Matrix<K>& eqs) {
  if (p.is_empty() || eqs.rows() == 0) return p;
  const size_t k = p.num_params();
  if (eqs.cols() != k + 1) throw Error("parameter equations have the wrong width");
  const auto ech = rref(eqs);
  if (!ech.pivots.empty() && ech.pivots.back() == k) return GramPencil<K>::empty(p.basis());
  std::vector<bool> is_pivot(k, false);
  for (size_t c : ech.pivots) is_pivot[c] = true;

  Matrix<K> constant = p.constant();
  for (size_t r = 0; r < ech.pivots.size(); ++r) {
    const K& b = ech.reduced(r, k);
    if (!is_zero(b)) constant = constant - b * p.direction(ech.pivots[r]);
  }
  std::vector<Matrix<K>> dirs;
  std::vector<std::string> names;
  for (size_t f = 0; f < k; ++f) {
    if (is_pivot[f]) continue;
    Matrix<K> d = p.direction(f);
    for (size_t r = 0; r < ech.pivots.size(); ++r) {
      const K& e = ech.reduced(r, f);
      if (!is_zero(e)) d = d - e * p.direction(ech.pivots[r]);
    }
    dirs.push_back(std::move(d));
    names.push_back(p.param_names()[f]);
  }
  return GramPencil<K>(p.basis(), std::move(constant), std::move(dirs), std::move(names));
}

template <class K>
GramPencil<K> apply_constraints(const GramPencil<K>& p, const std::vector<std::vector<K>>& us) {
  if (p.is_empty() || us.empty()) return p;
  const size_t m = p.size(), k = p.num_params();
  std::vector<std::vector<K>> rows;
  for (const auto& u : us) {
    if (u.size() != m) throw Error("constraint vector has the wrong length");
    std::vector<std::vector<K>> block(m, std::vector<K>(k + 1, K(0)));
    auto accumulate = [&](const Matrix<K>& mat, size_t col) {
      for (size_t r = 0; r < m; ++r) {
        K acc(0);
        for (size_t c = 0; c < m; ++c) {
          if (!is_zero(u[c]) && !is_zero(mat(r, c))) acc = acc + mat(r, c) * u[c];
        }
        block[r][col] = acc;
      }
    };
    for (size_t j = 0; j < k; ++j) accumulate(p.direction(j), j);
    accumulate(p.constant(), k);
    for (auto& row : block) {
      if (std::any_of(row.begin(), row.end(), [](const K& x) { return !is_zero(x); })) rows.push_back(std::move(row));
    }
  }
  Matrix<K> eqs(rows.size(), k + 1);
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t c = 0; c <= k; ++c) eqs(r, c) = rows[r][c];
  }
  return apply_parameter_equations(p, eqs);
}

Matrix<Rational> force_rational_equations(const GramPencil<AlgebraicNumber>& p) {
  const size_t m = p.size(), k = p.num_params();
  if (p.is_empty()) return Matrix<Rational>(0, k + 1);
  size_t d = 1;
  auto scan = [&](const Matrix<AlgebraicNumber>& a) {
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = 0; j < m; ++j) {
        if (a(i, j).field()) d = std::max(d, a(i, j).field()->degree());
      }
    }
  };
  scan(p.constant());
  for (const auto& dir : p.directions()) scan(dir);
  std::vector<std::vector<Rational>> rows;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i; j < m; ++j) {
      for (size_t pw = 1; pw < d; ++pw) {
        std::vector<Rational> row(k + 1);
        bool nonzero = false;
        for (size_t t = 0; t < k; ++t) {
          row[t] = p.direction(t)(i, j).coord(pw);
          nonzero = nonzero || sgn(row[t]) != 0;
        }
        row[k] = p.constant()(i, j).coord(pw);
        nonzero = nonzero || sgn(row[k]) != 0;
        if (nonzero) rows.push_back(std::move(row));
      }
    }
  }
  Matrix<Rational> eqs(rows.size(), k + 1);
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t c = 0; c <= k; ++c) eqs(r, c) = rows[r][c];
  }
  return eqs;
}

GramPencil<Rational> force_rational(const GramPencil<AlgebraicNumber>& p) {
  const Matrix<Rational> eqs = force_rational_equations(p);
  Matrix<AlgebraicNumber> lifted(eqs.rows(), eqs.cols());
  for (size_t i = 0; i < eqs.rows(); ++i) {
    for (size_t j = 0; j < eqs.cols(); ++j) lifted(i, j) = AlgebraicNumber(eqs(i, j));
  }
  auto lowered = lower_pencil(apply_parameter_equations(p, lifted));
  if (!lowered) throw Error("internal: rational forcing left irrational entries");
  return *lowered;
}

// ---------------------------------------------------------------------------

FacialReducer::FacialReducer(GramPencil<Rational> pencil, uint64_t seed, int rank_draws)
    : pencil_(std::move(pencil)), rng_(seed), draws_(rank_draws) {}

bool FacialReducer::is_empty() const {
  return std::visit([](const auto& p) { return p.is_empty(); }, pencil_);
}

const GramPencil<Rational>& FacialReducer::rational() const {
  if (!is_rational()) throw Error("pencil has irrational entries");
  return std::get<GramPencil<Rational>>(pencil_);
}

const GramPencil<AlgebraicNumber>& FacialReducer::algebraic() const {
  if (is_rational()) throw Error("pencil is rational");
  return std::get<GramPencil<AlgebraicNumber>>(pencil_);
}

size_t FacialReducer::dimension() const {
  return std::visit([](const auto& p) { return p.num_params(); }, pencil_);
}

size_t FacialReducer::size() const {
  return std::visit([](const auto& p) { return p.size(); }, pencil_);
}

size_t FacialReducer::rank() {
  return std::visit([&](const auto& p) { return generic_rank(p, rng_, draws_); }, pencil_);
}

void FacialReducer::record(const std::string& label) {
  const size_t r = rank();
  log_.steps.push_back({label, is_empty() ? 0 : dimension(), r, is_empty()});
}

namespace {

std::vector<std::vector<AlgebraicNumber>> lift_vectors(const std::vector<std::vector<Rational>>& vs) {
  std::vector<std::vector<AlgebraicNumber>> out;
  for (const auto& v : vs) out.emplace_back(v.begin(), v.end());
  return out;
}

}  // namespace

namespace {

GramPencil<AlgebraicNumber> map_pencil(const GramPencil<AlgebraicNumber>& p,
                                       const std::function<AlgebraicNumber(const AlgebraicNumber&)>& fn) {
  if (p.is_empty()) return p;
  auto conv = [&](const Matrix<AlgebraicNumber>& m) {
    Matrix<AlgebraicNumber> out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i) {
      for (size_t j = 0; j < m.cols(); ++j) out(i, j) = fn(m(i, j));
    }
    return out;
  };
  std::vector<Matrix<AlgebraicNumber>> dirs;
  for (const auto& d : p.directions()) dirs.push_back(conv(d));
  return GramPencil<AlgebraicNumber>(p.basis(), conv(p.constant()), std::move(dirs), p.param_names());
}

FieldPtr pencil_field(const GramPencil<AlgebraicNumber>& p) {
  auto scan = [](const Matrix<AlgebraicNumber>& m) -> FieldPtr {
    for (size_t i = 0; i < m.rows(); ++i) {
      for (size_t j = 0; j < m.cols(); ++j) {
        if (!m(i, j).is_rational()) return m(i, j).field();
      }
    }
    return nullptr;
  };
  if (p.is_empty()) return nullptr;
  if (auto f = scan(p.constant())) return f;
  for (const auto& d : p.directions()) {
    if (auto f = scan(d)) return f;
  }
  return nullptr;
}

}  // namespace

void FacialReducer::add_zeros(const std::vector<ZeroPoint>& zeros, ZeroMode mode) {
  if (is_empty()) return;
  const MonomialBasis& basis = std::visit([](const auto& p) -> const MonomialBasis& { return p.basis(); }, pencil_);
  std::vector<std::vector<Rational>> rational_us;
  std::vector<const ZeroPoint*> plain;
  for (const auto& z : zeros) {
    if (z.is_rational()) {
      rational_us.push_back(conjugate_constraints(basis, z).at(0).vector);
      continue;
    }
    switch (mode) {
      case ZeroMode::Trace: {
        auto c = trace_constraint(basis, z);
        if (c) rational_us.push_back(std::move(c->vector));
        else log_.warnings.push_back("trace vector of zero " + z.label + " vanishes; skipped");
        break;
      }
      case ZeroMode::Conjugate:
        for (auto& c : conjugate_constraints(basis, z)) rational_us.push_back(std::move(c.vector));
        break;
      case ZeroMode::Plain:
        plain.push_back(&z);
        break;
    }
  }
  if (plain.empty()) {
    if (is_rational()) {
      pencil_ = apply_constraints(rational(), rational_us);
    } else {
      pencil_ = apply_constraints(algebraic(), lift_vectors(rational_us));
    }
    return;
  }

  // One field holding the pencil and every zero: fold composita, tracking
  // where each original generator goes.
  std::vector<std::pair<FieldPtr, AlgebraicNumber>> images;
  FieldPtr target;
  auto image_of = [&](const FieldPtr& f) -> const AlgebraicNumber* {
    for (const auto& [g, img] : images) {
      if (g == f || g->same_as(*f)) return &img;
    }
    return nullptr;
  };
  auto include = [&](const FieldPtr& f) {
    if (!f || image_of(f)) return;
    if (!target) {
      target = f;
      images.emplace_back(f, AlgebraicNumber::generator(f));
      return;
    }
    const Compositum c = compositum(target, f, "c");
    if (c.field != target) {
      for (auto& [g, img] : images) img = embed(img, c.first);
      target = c.field;
    }
    images.emplace_back(f, c.second);
  };
  const FieldPtr current = is_rational() ? nullptr : pencil_field(algebraic());
  include(current);
  for (const auto* z : plain) include(z->field);
  if (images.size() > 2 || (images.size() == 2 && !current)) {
    log_.warnings.push_back("plain constraints combined over a field of degree " + std::to_string(target->degree()));
  }

  GramPencil<AlgebraicNumber> p = is_rational() ? lift_pencil(rational()) : algebraic();
  if (current && target != current) {
    const AlgebraicNumber img = *image_of(current);
    p = map_pencil(p, [&](const AlgebraicNumber& x) { return embed(x, img); });
  }
  auto all = lift_vectors(rational_us);
  for (const auto* z : plain) {
    const AlgebraicNumber img = *image_of(z->field);
    auto v = plain_constraint(basis, *z).vector;
    for (auto& x : v) x = embed(x, img);
    all.push_back(std::move(v));
  }
  auto next = apply_constraints(p, all);
  if (auto low = lower_pencil(next)) pencil_ = std::move(*low);
  else pencil_ = std::move(next);
}

template <class K>
bool ghost_round(GramPencil<K>& p, bool diag, bool minors, std::vector<std::string>& warnings) {
  // A parameter-free pencil is a single matrix; the exact PSD test decides it.
  if (p.num_params() == 0) return false;
  std::vector<std::vector<K>> us;
  if (diag) {
    for (auto& c : diag_ghosts(p)) us.push_back(std::move(c.vector));
  }
  if (minors) {
    for (auto& c : minor_ghosts(p, &warnings)) us.push_back(std::move(c.vector));
  }
  if (us.empty()) return false;
  p = apply_constraints(p, us);
  return true;
}

void FacialReducer::ghosts(bool minors, GhostPolicy policy) {
  auto loop = [&](bool diag, bool minor) {
    bool changed = true;
    while (changed && !is_empty()) {
      changed = std::visit([&](auto& p) { return ghost_round(p, diag, minor, log_.warnings); }, pencil_);
    }
  };
  if (policy == GhostPolicy::Fixpoint) {
    loop(true, minors);
    return;
  }
  loop(true, false);
  if (minors) loop(false, true);
}

void FacialReducer::force_rational() {
  if (is_rational() || is_empty()) return;
  pencil_ = exactsos::force_rational(algebraic());
}

FacialReducer reduce(const QPoly& f, const std::vector<ZeroPoint>& zeros, const ReduceOptions& options) {
  FacialReducer r(build_pencil(f), options.seed);
  r.record("original");
  if (!zeros.empty()) {
    r.add_zeros(zeros, options.trace_equations ? ZeroMode::Trace : ZeroMode::Plain);
    r.record("zeros");
  }
  r.ghosts(options.minor_ghosts, options.ghost_policy);
  r.record("ghosts");
  std::vector<ZeroPoint> algebraic;
  for (const auto& z : zeros) {
    if (!z.is_rational()) algebraic.push_back(z);
  }
  if (options.force_rational && !algebraic.empty() && !r.is_empty()) {
    // Plain constraints of fields of different degree are applied one field
    // at a time, each followed by rational forcing.
    for (const auto& z : algebraic) {
      r.add_zeros({z}, ZeroMode::Plain);
      r.record("plain zero " + z.label);
      r.force_rational();
      r.record("rational forcing");
    }
    r.ghosts(options.minor_ghosts, options.ghost_policy);
    r.record("ghosts");
  }
  return r;
}

template std::vector<KernelConstraint<Rational>> diag_ghosts(const GramPencil<Rational>&);
template std::vector<KernelConstraint<AlgebraicNumber>> diag_ghosts(const GramPencil<AlgebraicNumber>&);
template std::vector<KernelConstraint<Rational>> minor_ghosts(const GramPencil<Rational>&, std::vector<std::string>*);
template std::vector<KernelConstraint<AlgebraicNumber>> minor_ghosts(const GramPencil<AlgebraicNumber>&,
                                                                     std::vector<std::string>*);
template bool satisfied_identically(const GramPencil<Rational>&, const std::vector<Rational>&);
template bool satisfied_identically(const GramPencil<AlgebraicNumber>&, const std::vector<AlgebraicNumber>&);
template GramPencil<Rational> apply_constraints(const GramPencil<Rational>&, const std::vector<std::vector<Rational>>&);
template GramPencil<AlgebraicNumber> apply_constraints(const GramPencil<AlgebraicNumber>&,
                                                       const std::vector<std::vector<AlgebraicNumber>>&);
template GramPencil<Rational> apply_parameter_equations(const GramPencil<Rational>&, const Matrix<Rational>&);
template GramPencil<AlgebraicNumber> apply_parameter_equations(const GramPencil<AlgebraicNumber>&,
                                                               const Matrix<AlgebraicNumber>&);

}  // namespace exactsos
