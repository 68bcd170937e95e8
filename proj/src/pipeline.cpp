#include "exactsos/pipeline.hpp"

#include <chrono>

namespace exactsos {

namespace {

NfPoly lift(const QPoly& p) {
  return p.map_coefficients([](const Rational& q) { return AlgebraicNumber(q); });
}

template <class K>
K quadratic_form(const Matrix<K>& m, const std::vector<K>& w) {
  K acc(0);
  for (size_t i = 0; i < m.rows(); ++i) {
    if (is_zero(w[i])) continue;
    for (size_t j = 0; j < m.cols(); ++j) {
      if (!is_zero(w[j]) && !is_zero(m(i, j))) acc = acc + w[i] * m(i, j) * w[j];
    }
  }
  return acc;
}

// Exact certificate from one fixed Gram matrix, or nullopt when it is not PSD
// or does not reproduce f.
template <class K>
std::optional<Certificate> certify(const QPoly& f, const Matrix<K>& w, const MonomialBasis& basis) {
  const auto ldl = ldl_decompose(w);
  if (!ldl.psd) return std::nullopt;
  Certificate c = extract_certificate(w, basis);
  if (!verify_certificate(c, lift(f))) return std::nullopt;
  return c;
}

template <class K>
void run(const QPoly& f, const GramPencil<K>& p, size_t rank, std::mt19937_64& rng, const DecomposeOptions& options,
         RunReport& report) {
  if (p.num_params() == 0) {
    report.unique_solution = true;
    report.messages.push_back("solution matrix is unique under the specified conditions");
    const Matrix<K>& q = p.constant();
    const auto ldl = ldl_decompose(q);
    if (ldl.psd) {
      report.certificate = certify(f, q, p.basis());
      if (!report.certificate) throw Error("internal: unique Gram matrix is PSD but does not reproduce f");
      report.exit_code = 0;
      return;
    }
    if (sign(quadratic_form(q, ldl.witness)) >= 0) throw Error("internal: LDL witness is not negative");
    for (const auto& x : ldl.witness) report.witness.push_back(to_string(x));
    report.messages.push_back("the unique solution is not positive semidefinite");
    report.refusal = "not-psd-unique-solution";
    report.exit_code = 1;
    return;
  }

  report.omega = full_rank_principal_submatrix(p, rank, rng);
  const NumericPencil np = numeric_pencil(p, report.omega);
  report.sdp = max_min_eigenvalue(np, options.sdp);
  if (report.sdp->status != SdpStatus::PositiveDefinite) {
    report.messages.push_back("no strictly feasible point found on the reduced face (" +
                              to_string(report.sdp->status) + ")");
    report.refusal = "solver-boundary";
    report.exit_code = 2;
    return;
  }
  Integer den = options.max_denom;
  for (int attempt = 0; attempt <= options.rounding_retries; ++attempt, den *= 2) {
    const std::vector<Rational> tq = round_params(report.sdp->params, den);
    const std::vector<K> t(tq.begin(), tq.end());
    if (auto c = certify(f, p.evaluate(t), p.basis())) {
      report.certificate = std::move(c);
      report.messages.push_back("rounded with denominators up to " + den.get_str());
      report.exit_code = 0;
      return;
    }
  }
  report.messages.push_back("rounded solution is not positive semidefinite");
  report.refusal = "solver-boundary";
  report.exit_code = 2;
}

}  // namespace

RunReport decompose(const QPoly& f, const std::vector<ZeroPoint>& zeros, const DecomposeOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  FacialReducer reducer = reduce(f, zeros, options.reduce);
  report.log = reducer.log();
  if (reducer.is_empty()) {
    report.messages.push_back("no Gram matrix satisfies the applied conditions");
    report.refusal = "empty-pencil";
    report.exit_code = 1;
  } else {
    const size_t rank = reducer.rank();
    std::visit([&](const auto& p) { run(f, p, rank, reducer.rng(), options, report); }, reducer.pencil());
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace exactsos
