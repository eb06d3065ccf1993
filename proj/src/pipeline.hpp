// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "verifier.hpp"

namespace siegert {

/// Everything one batch run needs. Defaults reproduce the benchmark model
/// V0 = 7.5, Z = -1 over the s, p and d waves.
struct RunConfig {
  std::string V0 = "7.5"; ///< decimal strings: exact rational inputs
  std::string Z = "-1";
  std::vector<int> waves = {0, 1, 2};
  int d = 0;
  int D_min = 6;
  int D_max = 40;
  int scan_dimension = 12; ///< where seeds are located and traces anchored
  SearchRegion region;
  double tol_target = 1e-12;
  PrecisionPolicy precision;
  bool verify = true;
  VerifierSettings verifier;

  void validate() const; ///< throws UsageError
};

struct TraceResult {
  ResonanceTrace trace;
  bool verified = false;    ///< verifier was run on this trace
  bool verify_pass = false; ///< meaningful only when verified
  VerifyReport report;
};

struct RunResult {
  std::vector<TraceResult> traces; ///< sorted by (l, converged-first, nu, Re)
  int converged = 0;
  bool precision_exhausted = false;
};

/// Scan + continuation (+ optional verification) over every requested
/// partial wave. Pure compute; writing files is the caller's business.
RunResult run_pipeline(const RunConfig& config);

} // namespace siegert
