#include "exactsos/matrix.hpp"

namespace exactsos {

namespace {

std::vector<std::vector<Integer>> integer_rows(const Matrix<Rational>& m) {
  std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
  for (size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  return out;
}

// Bareiss elimination in place; returns pivot columns and tracks row swaps.
std::vector<size_t> bareiss(std::vector<std::vector<Integer>>& a, size_t cols, int& swaps) {
  std::vector<size_t> pivots;
  const size_t rows = a.size();
  Integer prev = 1;
  size_t row = 0;
  swaps = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t p = row;
    while (p < rows && sgn(a[p][col]) == 0) ++p;
    if (p == rows) continue;
    if (p != row) {
      std::swap(a[p], a[row]);
      ++swaps;
    }
    for (size_t i = row + 1; i < rows; ++i) {
      for (size_t j = col + 1; j < cols; ++j) {
        Integer v = a[row][col] * a[i][j] - a[i][col] * a[row][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
      a[i][col] = 0;
    }
    prev = a[row][col];
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<size_t> bareiss_pivot_columns(const Matrix<Rational>& m) {
  auto a = integer_rows(m);
  int swaps = 0;
  return bareiss(a, m.cols(), swaps);
}

Rational bareiss_determinant(const Matrix<Rational>& m) {
  if (!m.is_square()) throw Error("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  auto a = integer_rows(m);
  Rational scale = 1;
  for (size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    scale /= l;
  }
  int swaps = 0;
  const auto piv = bareiss(a, m.cols(), swaps);
  if (piv.size() < m.rows()) return 0;
  Rational det(a[m.rows() - 1][m.cols() - 1]);
  det *= scale;
  if (swaps % 2) det = -det;
  return det;
}

}  // namespace exactsos
