#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "exactsos/rational.hpp"

namespace exactsos {

/// Dense row-major matrix over a commutative ring K.
template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, const K& fill = K(0)) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<K>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  K& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const {
    if (!is_square()) return false;
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = i + 1; j < cols_; ++j) {
        if (!((*this)(i, j) == (*this)(j, i))) return false;
      }
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  /// Rows and columns restricted to idx (principal submatrix when square).
  Matrix principal(const std::vector<size_t>& idx) const {
    Matrix s(idx.size(), idx.size());
    for (size_t i = 0; i < idx.size(); ++i) {
      for (size_t j = 0; j < idx.size(); ++j) s(i, j) = (*this)(idx[i], idx[j]);
    }
    return s;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    if (v.size() != cols_) throw Error("matrix-vector size mismatch");
    std::vector<K> out(rows_, K(0));
    for (size_t i = 0; i < rows_; ++i) {
      K acc(0);
      for (size_t j = 0; j < cols_; ++j) {
        if (!is_zero(v[j])) acc = acc + (*this)(i, j) * v[j];
      }
      out[i] = acc;
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product size mismatch");
    Matrix c(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i) {
      for (size_t k = 0; k < a.cols_; ++k) {
        if (is_zero(a(i, k))) continue;
        for (size_t j = 0; j < b.cols_; ++j) c(i, j) = c(i, j) + a(i, k) * b(k, j);
      }
    }
    return c;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix sum size mismatch");
    Matrix c = a;
    for (size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = c.data_[i] + b.data_[i];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix difference size mismatch");
    Matrix c = a;
    for (size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = c.data_[i] - b.data_[i];
    return c;
  }
  friend Matrix operator*(const K& s, const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_) x = s * x;
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (size_t i = 0; i < a.data_.size(); ++i) {
      if (!(a.data_[i] == b.data_[i])) return false;
    }
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  bool is_zero_matrix() const {
    for (const auto& x : data_) {
      if (!is_zero(x)) return false;
    }
    return true;
  }

  std::string to_string() const {
    using exactsos::to_string;
    std::ostringstream out;
    for (size_t i = 0; i < rows_; ++i) {
      out << "[";
      for (size_t j = 0; j < cols_; ++j) out << (j ? ", " : "") << to_string((*this)(i, j));
      out << "]\n";
    }
    return out.str();
  }

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<K> data_;
};

/// Reduced row echelon form over a field, with the pivot column of each
/// nonzero row.
template <class K>
struct Echelon {
  Matrix<K> reduced;
  std::vector<size_t> pivots;
};

template <class K>
Echelon<K> rref(Matrix<K> m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    }
    const K inv = K(1) / m(row, col);
    for (size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const K factor = m(i, col);
      for (size_t j = col; j < m.cols(); ++j) {
        if (!is_zero(m(row, j))) m(i, j) = m(i, j) - factor * m(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

/// Rank and pivot columns by Gaussian elimination over a field.
template <class K>
std::vector<size_t> pivot_columns(Matrix<K> m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    }
    const K inv = K(1) / m(row, col);
    for (size_t i = row + 1; i < m.rows(); ++i) {
      if (is_zero(m(i, col))) continue;
      const K factor = m(i, col) * inv;
      for (size_t j = col; j < m.cols(); ++j) {
        if (!is_zero(m(row, j))) m(i, j) = m(i, j) - factor * m(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
size_t rank(const Matrix<K>& m) {
  return pivot_columns(m).size();
}

/// Fraction-free (Bareiss) elimination on the integer matrix obtained by
/// clearing denominators row by row. Returns the pivot columns.
std::vector<size_t> bareiss_pivot_columns(const Matrix<Rational>& m);
Rational bareiss_determinant(const Matrix<Rational>& m);

/// Coefficients c_0..c_n (ascending) of det(x I - M), by Berkowitz's
/// division-free algorithm; valid over any commutative ring.
template <class R>
std::vector<R> berkowitz_charpoly(const Matrix<R>& a) {
  if (!a.is_square()) throw Error("characteristic polynomial of a non-square matrix");
  const size_t n = a.rows();
  if (n == 0) return {R(1)};
  // Descending coefficient vector of the leading r x r block.
  std::vector<R> c{R(1), R(0) - a(0, 0)};
  for (size_t r = 1; r < n; ++r) {
    std::vector<R> t(r + 2, R(0));
    t[0] = R(1);
    t[1] = R(0) - a(r, r);
    // s_k = S^k * column, with S the leading r x r block.
    std::vector<R> s(r);
    for (size_t i = 0; i < r; ++i) s[i] = a(i, r);
    for (size_t k = 2; k <= r + 1; ++k) {
      R acc(0);
      for (size_t j = 0; j < r; ++j) acc = acc + a(r, j) * s[j];
      t[k] = R(0) - acc;
      if (k == r + 1) break;
      std::vector<R> next(r, R(0));
      for (size_t i = 0; i < r; ++i) {
        R v(0);
        for (size_t j = 0; j < r; ++j) v = v + a(i, j) * s[j];
        next[i] = v;
      }
      s = std::move(next);
    }
    std::vector<R> nc(r + 2, R(0));
    for (size_t i = 0; i < r + 2; ++i) {
      R v(0);
      for (size_t j = 0; j <= std::min(i, r); ++j) v = v + t[i - j] * c[j];
      nc[i] = v;
    }
    c = std::move(nc);
  }
  return std::vector<R>(c.rbegin(), c.rend());
}

template <class R>
R berkowitz_determinant(const Matrix<R>& a) {
  const auto cp = berkowitz_charpoly(a);
  return a.rows() % 2 == 0 ? cp[0] : R(0) - cp[0];
}

}  // namespace exactsos
