#include "exactsos/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace exactsos {

SymEigen sym_eigen(const Matrix<double>& m, double tol, int max_sweeps) {
  if (!m.is_square()) throw Error("sym_eigen needs a square matrix");
  const size_t n = m.rows();
  Matrix<double> a = m;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const double s = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = s;
      a(j, i) = s;
    }
  }
  Matrix<double> v = Matrix<double>::identity(n);
  double scale = 0.0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) scale += a(i, j) * a(i, j);
  }
  scale = std::sqrt(scale);
  auto off = [&] {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    }
    return std::sqrt(2.0 * s);
  };
  int sweep = 0;
  while (off() > tol * std::max(scale, 1e-300) && scale > 0.0) {
    if (++sweep > max_sweeps) throw Error("Jacobi eigenvalue iteration did not converge");
    for (size_t p = 0; p < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) { return a(x, x) < a(y, y); });
  SymEigen out{std::vector<double>(n), Matrix<double>(n, n)};
  for (size_t i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]);
    for (size_t k = 0; k < n; ++k) out.vectors(k, i) = v(k, order[i]);
  }
  return out;
}

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::PositiveDefinite:
      return "positive-definite";
    case SdpStatus::Boundary:
      return "boundary";
    case SdpStatus::InfeasibleLike:
      return "infeasible-like";
  }
  return "?";
}

Matrix<double> NumericPencil::evaluate(const std::vector<double>& t) const {
  if (t.size() != directions.size()) throw Error("parameter vector has the wrong length");
  Matrix<double> w = constant;
  for (size_t j = 0; j < t.size(); ++j) {
    if (t[j] == 0.0) continue;
    for (size_t r = 0; r < w.rows(); ++r) {
      for (size_t c = 0; c < w.cols(); ++c) w(r, c) += t[j] * directions[j](r, c);
    }
  }
  return w;
}

template <class K>
NumericPencil numeric_pencil(const GramPencil<K>& p, const std::vector<size_t>& omega) {
  if (p.is_empty()) throw Error("cannot convert an empty pencil");
  auto conv = [&](const Matrix<K>& m) {
    Matrix<double> d(omega.size(), omega.size());
    for (size_t i = 0; i < omega.size(); ++i) {
      for (size_t j = 0; j < omega.size(); ++j) d(i, j) = to_double(m(omega[i], omega[j]));
    }
    return d;
  };
  NumericPencil out;
  out.constant = conv(p.constant());
  for (const auto& d : p.directions()) out.directions.push_back(conv(d));
  return out;
}

template <class K>
std::vector<size_t> full_rank_principal_submatrix(const GramPencil<K>& p, size_t target, std::mt19937_64& rng,
                                                  int draws) {
  if (target == 0) return {};
  if (p.is_empty()) throw Error("empty pencil has no principal submatrix");
  for (int d = 0; d < std::max(draws, 1); ++d) {
    const auto w = p.evaluate(random_parameters<K>(p.num_params(), rng));
    auto piv = exact_pivots(w);
    if (piv.size() < target) continue;
    piv.resize(target);
    if (exact_pivots(w.principal(piv)).size() == target) return piv;
  }
  throw Error("no principal submatrix of rank " + std::to_string(target) + " found");
}

namespace {

struct MinEig {
  double value;
  std::vector<double> grad;
};

/// lambda_min and a supergradient; eigenvectors of eigenvalues within `tie`
/// of the minimum contribute their averaged gradients.
MinEig min_eig(const NumericPencil& p, const std::vector<double>& t, double tie) {
  const auto e = sym_eigen(p.evaluate(t));
  const size_t n = p.size();
  MinEig out{e.values.front(), std::vector<double>(p.num_params(), 0.0)};
  size_t count = 0;
  for (size_t c = 0; c < n && e.values[c] <= e.values.front() + tie; ++c) {
    ++count;
    for (size_t j = 0; j < p.num_params(); ++j) {
      const auto& d = p.directions[j];
      double s = 0.0;
      for (size_t r = 0; r < n; ++r) {
        double dr = 0.0;
        for (size_t k = 0; k < n; ++k) dr += d(r, k) * e.vectors(k, c);
        s += e.vectors(r, c) * dr;
      }
      out.grad[j] += s;
    }
  }
  for (auto& g : out.grad) g /= static_cast<double>(count);
  return out;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// Lower Cholesky factor, or false when the matrix is not positive definite.
bool cholesky(const Matrix<double>& a, Matrix<double>& l) {
  const size_t n = a.rows();
  l = Matrix<double>(n, n);
  for (size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return false;
    l(j, j) = std::sqrt(d);
    for (size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return true;
}

Matrix<double> cholesky_inverse(const Matrix<double>& l) {
  const size_t n = l.rows();
  Matrix<double> inv(n, n);
  for (size_t c = 0; c < n; ++c) {
    std::vector<double> y(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
      double s = i == c ? 1.0 : 0.0;
      for (size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
      y[i] = s / l(i, i);
    }
    for (size_t i = n; i-- > 0;) {
      double s = y[i];
      for (size_t k = i + 1; k < n; ++k) s -= l(k, i) * inv(k, c);
      inv(i, c) = s / l(i, i);
    }
  }
  return inv;
}

/// Solves a x = b by Gaussian elimination with partial pivoting.
std::vector<double> solve(Matrix<double> a, std::vector<double> b) {
  const size_t n = a.rows();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r) {
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    }
    if (a(piv, c) == 0.0) continue;
    if (piv != c) {
      for (size_t k = 0; k < n; ++k) std::swap(a(c, k), a(piv, k));
      std::swap(b[c], b[piv]);
    }
    for (size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      if (f == 0.0) continue;
      for (size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n, 0.0);
  for (size_t i = n; i-- > 0;) {
    if (a(i, i) == 0.0) continue;
    double s = b[i];
    for (size_t k = i + 1; k < n; ++k) s -= a(i, k) * x[k];
    x[i] = s / a(i, i);
  }
  return x;
}

/// Path-following on max lambda + mu log det(W(t) - lambda I) with mu -> 0.
/// Starts from a strictly feasible point below lambda_min(W(t0)).
std::vector<double> barrier_refine(const NumericPencil& p, std::vector<double> t, double lambda0) {
  const size_t n = p.size();
  const size_t k = p.num_params();
  const size_t dim = k + 1;
  double scale = std::max(1.0, std::abs(lambda0));
  double lambda = lambda0 - 0.1 * scale;
  auto slack = [&](const std::vector<double>& tt, double lam) {
    Matrix<double> s = p.evaluate(tt);
    for (size_t i = 0; i < n; ++i) s(i, i) -= lam;
    return s;
  };
  auto objective = [&](const Matrix<double>& l, double lam, double mu) {
    double logdet = 0.0;
    for (size_t i = 0; i < n; ++i) logdet += 2.0 * std::log(l(i, i));
    return lam + mu * logdet;
  };
  // A_j for j < k are the directions, A_k = -I.
  auto apply_a = [&](size_t j, const Matrix<double>& m) {
    Matrix<double> out(n, n);
    if (j == k) {
      for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < n; ++c) out(r, c) = -m(r, c);
      }
      return out;
    }
    return m * p.directions[j];
  };
  Matrix<double> l;
  for (double mu = 0.1 * scale; mu > 1e-12 * scale; mu *= 0.2) {
    for (int it = 0; it < 60; ++it) {
      if (!cholesky(slack(t, lambda), l)) return t;
      const Matrix<double> sinv = cholesky_inverse(l);
      std::vector<Matrix<double>> sa;
      sa.reserve(dim);
      for (size_t j = 0; j < dim; ++j) sa.push_back(apply_a(j, sinv));
      std::vector<double> grad(dim, 0.0);
      Matrix<double> hess(dim, dim);
      for (size_t i = 0; i < dim; ++i) {
        double tr = 0.0;
        for (size_t r = 0; r < n; ++r) tr += sa[i](r, r);
        grad[i] = mu * tr + (i == k ? 1.0 : 0.0);
        for (size_t j = i; j < dim; ++j) {
          double s = 0.0;
          for (size_t r = 0; r < n; ++r) {
            for (size_t c = 0; c < n; ++c) s += sa[i](r, c) * sa[j](c, r);
          }
          hess(i, j) = mu * s + (i == j ? 1e-12 : 0.0);
          hess(j, i) = hess(i, j);
        }
      }
      // Newton direction for maximization: (mu * H) dx = grad.
      const auto dx = solve(hess, grad);
      double decrement = 0.0;
      for (size_t i = 0; i < dim; ++i) decrement += dx[i] * grad[i];
      if (!(decrement > 0.0) || decrement < 1e-12 * mu) break;
      const double f0 = objective(l, lambda, mu);
      double step = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
        std::vector<double> tn = t;
        for (size_t j = 0; j < k; ++j) tn[j] += step * dx[j];
        const double ln = lambda + step * dx[k];
        Matrix<double> ltrial;
        if (!cholesky(slack(tn, ln), ltrial)) continue;
        if (objective(ltrial, ln, mu) >= f0 + 0.25 * step * decrement) {
          t = std::move(tn);
          lambda = ln;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
  }
  return t;
}

}  // namespace

SdpResult max_min_eigenvalue(const NumericPencil& p, const SdpConfig& cfg) {
  if (!(cfg.eig_tolerance > 0.0)) throw Error("eigenvalue tolerance must be positive");
  const size_t k = p.num_params();
  SdpResult best;
  auto classify = [&](SdpResult& r) {
    if (r.min_eigenvalue > cfg.eig_tolerance)
      r.status = SdpStatus::PositiveDefinite;
    else if (r.min_eigenvalue < -cfg.eig_tolerance)
      r.status = SdpStatus::InfeasibleLike;
    else
      r.status = SdpStatus::Boundary;
  };
  if (p.size() == 0) {
    best.params.assign(k, 0.0);
    best.min_eigenvalue = 0.0;
    best.status = SdpStatus::Boundary;
    return best;
  }
  best.params.assign(k, 0.0);
  best.min_eigenvalue = sym_eigen(p.evaluate(best.params)).values.front();
  best.history.push_back(best.min_eigenvalue);
  if (k == 0) {
    classify(best);
    return best;
  }

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int restart = 0; restart < std::max(cfg.restarts, 1); ++restart) {
    std::vector<double> t = best.params;
    double step = cfg.initial_step;
    if (restart > 0) {
      const double spread = std::max(1.0, norm(best.params)) * 0.5;
      for (auto& x : t) x += spread * gauss(rng);
    }
    MinEig cur = min_eig(p, t, 1e-7);
    double scale = 1.0;
    for (size_t j = 0; j < k; ++j) scale = std::max(scale, std::abs(t[j]));
    step *= scale;
    for (int it = 0; it < cfg.max_iterations && step > 1e-13 * scale; ++it) {
      ++best.iterations;
      const double gn = norm(cur.grad);
      if (gn == 0.0) break;
      std::vector<double> tn = t;
      for (size_t j = 0; j < k; ++j) tn[j] += step * cur.grad[j] / gn;
      MinEig next = min_eig(p, tn, 1e-7 * std::max(1.0, std::abs(cur.value)));
      if (next.value > cur.value) {
        t = std::move(tn);
        cur = std::move(next);
        step *= 1.2;
      } else {
        step *= 0.5;
      }
      if (cur.value > best.min_eigenvalue) {
        best.min_eigenvalue = cur.value;
        best.params = t;
      }
      best.history.push_back(best.min_eigenvalue);
    }
  }

  if (cfg.refine) {
    const auto t = barrier_refine(p, best.params, best.min_eigenvalue);
    const double v = sym_eigen(p.evaluate(t)).values.front();
    if (v > best.min_eigenvalue) {
      best.min_eigenvalue = v;
      best.params = t;
    }
    best.history.push_back(best.min_eigenvalue);
  }
  classify(best);
  return best;
}

template NumericPencil numeric_pencil(const GramPencil<Rational>&, const std::vector<size_t>&);
template NumericPencil numeric_pencil(const GramPencil<AlgebraicNumber>&, const std::vector<size_t>&);
template std::vector<size_t> full_rank_principal_submatrix(const GramPencil<Rational>&, size_t, std::mt19937_64&,
                                                           int);
template std::vector<size_t> full_rank_principal_submatrix(const GramPencil<AlgebraicNumber>&, size_t,
                                                           std::mt19937_64&, int);

}  // namespace exactsos
