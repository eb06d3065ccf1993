// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <vector>

#include "series.hpp"
#include "solver.hpp"

namespace siegert {

/// Outcome of the outward-integration check of the outgoing-wave boundary
/// condition Phi'/Phi -> ik at large r.
struct SiegertResidual {
  BigComplex E;
  BigComplex k;       ///< sqrt(2E); Re k >= 0, bound states get Im k > 0
  double R = 0.0;     ///< matching radius
  double residual = 0.0; ///< |g(R) - g_asym(R)|
  BigComplex g_at_R;
  BigComplex g_asym;
  bool displaced_path = false; ///< integration detoured below the real axis
};

struct VerifierSettings {
  double r0 = 0.1;
  double R = 30.0;
  int steps = 12000;
  int init_order = 40;   ///< series order used to start g at r0
  int asym_order = 6;    ///< inverse powers of R kept in the asymptote
  int digits = 60;
  double residual_threshold = 1e-4;
  double min_probe = 1e-6; ///< floor for the local-minimum probe offset
};

/// Analytic Coulomb levels -1/(2n^2), n = l+1 .. n_max, for the Z = -1,
/// V0 = 0 limit. Exact rationals.
std::vector<mpq_class> hydrogen_levels(int l, int n_max);

/// Integrates the logarithmic derivative g = Phi'/Phi outward from r0
/// (initialized by the Taylor series of the regularized log-derivative)
/// through g' = l(l+1)/r^2 + 2V - 2E - g^2 to R, and compares with the
/// Coulomb-corrected outgoing asymptote
///
///   g_asym(R) = ik + sum_{m=1..asym_order} c_m / R^m
///
/// whose coefficients follow from the same Riccati equation at large r
/// (c_1 = Z/(ik) is the classic first-order long-range correction).
///
/// The integrator takes `steps` fixed steps of a degree-24 Taylor method
/// (the step's local series is the Riccati recurrence recentered at the
/// current point). Nodes of Phi put poles of g on the path; when one is
/// hit the integration retries with a perturbed r0 and then along a path
/// displaced below the real axis. Throws PoleEncountered if every path
/// fails, UsageError for bad geometry.
SiegertResidual siegert_residual(const PotentialModel& model, int l,
                                 const BigComplex& E, double r0, double R,
                                 int steps, int digits = 60, int init_order = 40,
                                 int asym_order = 6);

/// Verification report for one converged trace.
struct VerifyReport {
  bool pass = false;
  double residual_best = 0.0;
  double residual_below = 0.0; ///< at best - probe
  double residual_above = 0.0; ///< at best + probe
  double probe = 0.0;
  std::string message;
};

/// Runs the Siegert residual at the trace's best estimate and at
/// best +- probe, where probe = max(best_uncertainty, min_probe*(1+|E|)).
/// Passes when the residual at best is below the threshold and not larger
/// than either neighbor. Throws UsageError for non-converged traces.
VerifyReport verify_trace(const ResonanceTrace& trace, const PotentialModel& model,
                          const VerifierSettings& settings = {});

} // namespace siegert
