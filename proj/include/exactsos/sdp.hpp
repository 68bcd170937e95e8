#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "exactsos/gram.hpp"
#include "exactsos/number_field.hpp"

namespace exactsos {

struct SymEigen {
  std::vector<double> values;  // ascending
  Matrix<double> vectors;      // column i belongs to values[i]
};

/// Cyclic Jacobi eigen-decomposition of a symmetric matrix. Throws Error
/// when the off-diagonal mass does not fall below tol within max_sweeps.
SymEigen sym_eigen(const Matrix<double>& m, double tol = 1e-14, int max_sweeps = 100);

struct SdpConfig {
  double eig_tolerance = 1e-9;
  int max_iterations = 2000;
  int restarts = 5;
  double initial_step = 1.0;
  uint64_t seed = 1;
  /// Barrier path-following polish after the supergradient phase.
  bool refine = true;
};

enum class SdpStatus { PositiveDefinite, Boundary, InfeasibleLike };
std::string to_string(SdpStatus s);

struct SdpResult {
  std::vector<double> params;
  double min_eigenvalue = 0.0;
  SdpStatus status = SdpStatus::Boundary;
  int iterations = 0;
  /// Best-so-far minimum eigenvalue after each supergradient iteration.
  std::vector<double> history;
};

/// Floating-point copy of a pencil restricted to rows/columns omega.
struct NumericPencil {
  Matrix<double> constant;
  std::vector<Matrix<double>> directions;

  size_t size() const { return constant.rows(); }
  size_t num_params() const { return directions.size(); }
  Matrix<double> evaluate(const std::vector<double>& t) const;
};

template <class K>
NumericPencil numeric_pencil(const GramPencil<K>& p, const std::vector<size_t>& omega);

/// Index set of size `target` whose principal submatrix of a random
/// specialization is nonsingular, taken from the pivots of exact elimination.
/// Throws Error when no draw reaches the target rank.
template <class K>
std::vector<size_t> full_rank_principal_submatrix(const GramPencil<K>& p, size_t target, std::mt19937_64& rng,
                                                  int draws = 3);

/// Maximizes the minimum eigenvalue of W(t) by supergradient ascent with
/// step halving and random restarts, optionally polished by a log-barrier
/// Newton path-following.
SdpResult max_min_eigenvalue(const NumericPencil& p, const SdpConfig& cfg);

}  // namespace exactsos
