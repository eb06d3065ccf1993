// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hankel.hpp"

namespace siegert {

/// Complex-plane rectangle scanned for Newton seeds.
struct SearchRegion {
  double re_min = 0.0, re_max = 8.0;
  double im_min = -4.0, im_max = 0.0;
  int grid_re = 60, grid_im = 30;

  void validate() const;
};

enum class TraceStatus { converging, converged, stagnated, lost };

const char* to_string(TraceStatus s);

/// One root sequence E^[D] tracked over increasing determinant dimension,
/// labeled (l, nu) once converged.
struct ResonanceTrace {
  int l = 0;
  int d = 0;
  int nu = -1; ///< ordering label by ascending Re(best); -1 if not converged
  int D_first = 0; ///< dimension of roots[0]; keys are contiguous
  std::vector<BigComplex> roots;
  BigComplex best;
  BigReal best_uncertainty;
  TraceStatus status = TraceStatus::lost;
  int digits_used = 0;
  bool precision_exhausted = false;

  int D_last() const { return D_first + (int)roots.size() - 1; }
  bool has(int D) const { return D >= D_first && D <= D_last(); }
  const BigComplex& root_at(int D) const { return roots[(size_t)(D - D_first)]; }
};

/// One row of the convergence diagnostic L_D = log10 |alpha_D - alpha_{D+1}|
/// for the real and imaginary parts separately. A difference of exactly
/// zero is flagged as a sentinel (minus infinity) instead of a number.
struct ConvergenceRow {
  int D = 0;
  double L_re = 0.0;
  double L_im = 0.0;
  bool re_sentinel = false;
  bool im_sentinel = false;
};

/// Sample of the logarithmic derivative H'/H used by the Newton driver.
struct LogDerivSample {
  BigComplex dlog;
  bool exact_zero = false; ///< the function value is exactly zero: seed is a root
  bool singular = false;   ///< value indistinguishable from zero at this precision
  double condition = 0.0;  ///< log10 loss-of-digits estimate
};

/// Anything that can serve Newton a logarithmic derivative at a trial
/// energy and precision. The production target is the Hankel determinant;
/// tests substitute analytic functions.
using LogDerivFn = std::function<LogDerivSample(const BigComplex& E, int digits)>;

struct NewtonResult {
  BigComplex root;
  int digits_used = 0;
  int iterations = 0;
};

/// Newton iteration E <- E - m / dlog(E) (identical to Newton on the
/// function itself for simple roots, with an integer multiplicity factor m
/// estimated from the step-contraction ratio so that roots of higher
/// multiplicity converge as well). Stops when |step| < tol * max(1, |E|);
/// escalates precision when the step stagnates above tolerance at the
/// cancellation floor, or when the evaluation reports singular-to-precision
/// while the step is still above tolerance. A singular report with the
/// step already below tolerance counts as convergence.
NewtonResult newton_on_logderiv(const LogDerivFn& fn, const BigComplex& seed,
                                const PrecisionPolicy& policy, int start_digits,
                                double tol, int max_iterations = 60);

/// Newton refinement of a root of the dimension-D Hankel determinant,
/// starting from `seed` at the policy's working precision for D.
NewtonResult newton_polish(const PotentialModel& model, int l, int d, int D,
                           const BigComplex& seed, const PrecisionPolicy& policy,
                           double tol);

/// Scans the scale-free determinant residual on the region grid at
/// dimension D0 and returns the strict local minima as Newton seeds,
/// deduplicated within 1e-3. Minima on the Im = 0 edge are kept: narrow
/// resonances surface as near-real roots first.
std::vector<BigComplex> seed_scan(const PotentialModel& model, int l, int d, int D0,
                                  const SearchRegion& region,
                                  const PrecisionPolicy& policy);

/// Polishes every seed at the anchor dimension (where the seeds were
/// located; D_min when omitted) and follows each root through the
/// dimension range, every root seeding its neighbor dimension: upward to
/// D_max, then downward toward D_min for as long as the sequence exists.
/// Classifies traces as converged / converging / stagnated / lost, merges
/// duplicates, and assigns nu labels by ascending Re(best) among converged
/// traces.
std::vector<ResonanceTrace> continue_in_D(const PotentialModel& model, int l, int d,
                                          const std::vector<BigComplex>& seeds,
                                          int D_min, int D_max,
                                          const PrecisionPolicy& policy,
                                          double tol_target, int D_anchor = -1);

/// L_D rows for plotting; throws TooShort for traces with fewer than three
/// recorded dimensions.
std::vector<ConvergenceRow> convergence_report(const ResonanceTrace& trace);

/// Least-squares slope of L_D (log10 of the full step magnitude) over the
/// last `window` recorded dimensions; sentinel rows are skipped. Returns
/// nullopt when fewer than two usable points exist.
std::optional<double> trend_slope(const ResonanceTrace& trace, int window);

} // namespace siegert
