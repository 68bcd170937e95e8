#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactsos/certificate.hpp"
#include "exactsos/facial.hpp"
#include "exactsos/sdp.hpp"

namespace exactsos {

struct DecomposeOptions {
  ReduceOptions reduce;
  SdpConfig sdp;
  Integer max_denom = 1000000;
  /// Extra rounding attempts, each with the denominator bound doubled.
  int rounding_retries = 3;
};

/// Exit codes: 0 certificate, 1 no decomposition under the applied
/// conditions, 2 inconclusive.
struct RunReport {
  ReductionLog log;
  std::optional<SdpResult> sdp;
  std::vector<size_t> omega;
  std::optional<Certificate> certificate;
  bool unique_solution = false;
  /// not-psd-unique-solution, empty-pencil or solver-boundary.
  std::string refusal;
  /// w with w^T Q w < 0 for the unique solution Q (entries as text).
  std::vector<std::string> witness;
  std::vector<std::string> messages;
  int exit_code = 2;
  double seconds = 0.0;
};

RunReport decompose(const QPoly& f, const std::vector<ZeroPoint>& zeros, const DecomposeOptions& options);

}  // namespace exactsos
