// SPDX-License-Identifier: Apache-2.0
#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <future>
#include <limits>
#include <thread>

namespace siegert {

void SearchRegion::validate() const {
  if (!(re_min < re_max) || !(im_min < im_max))
    throw UsageError("search region is empty");
  if (grid_re < 4 || grid_im < 4)
    throw UsageError("search grid needs at least 4 points per axis");
}

const char* to_string(TraceStatus s) {
  switch (s) {
  case TraceStatus::converging: return "converging";
  case TraceStatus::converged: return "converged";
  case TraceStatus::stagnated: return "stagnated";
  case TraceStatus::lost: return "lost";
  }
  return "unknown";
}

NewtonResult newton_on_logderiv(const LogDerivFn& fn, const BigComplex& seed,
                                const PrecisionPolicy& policy, int start_digits,
                                double tol, int max_iterations) {
  if (tol <= 0.0)
    throw UsageError("newton tolerance must be positive");

  int digits = start_digits;
  BigComplex E = seed.to_digits(digits);
  int digits_used = digits;

  std::deque<double> step_log10; // recent |step| magnitudes, log10
  double last_step_rel = std::numeric_limits<double>::infinity();

  auto escalate = [&]() {
    digits = policy.escalate(digits);
    digits_used = std::max(digits_used, digits);
    E = E.to_digits(digits);
    step_log10.clear();
  };

  for (int iter = 1; iter <= max_iterations; ++iter) {
    LogDerivSample s = fn(E, digits);
    if (s.exact_zero)
      return {E, digits_used, iter};
    if (s.singular) {
      if (last_step_rel < tol)
        return {E, digits_used, iter};
      escalate();
      continue;
    }

    BigComplex step = BigComplex(1, digits) / s.dlog;
    if (!step.is_finite())
      throw NoConvergence("newton step is not finite (critical point?)");

    double step_l10 = step.abs().log10_abs();

    // Multiplicity from the step-contraction ratio: near a root of
    // multiplicity m the plain step contracts by (m-1)/m each iteration.
    if (step_log10.size() >= 2) {
      double r1 = std::pow(10.0, step_l10 - step_log10.back());
      double r2 = std::pow(10.0, step_log10.back() - step_log10[step_log10.size() - 2]);
      if (r1 >= 0.45 && r1 <= 0.998 && std::fabs(r1 - r2) < 0.05) {
        long m = std::lround(1.0 / (1.0 - r1));
        m = std::clamp(m, 1L, 512L);
        if (m > 1)
          step = step * m;
      }
    }

    E -= step;

    BigReal scale(1, digits);
    BigReal mag = E.abs();
    if (mag > scale)
      scale = mag;
    BigReal step_abs = step.abs();
    last_step_rel = std::pow(10.0, step_abs.log10_abs() - scale.log10_abs());
    if (step_abs < scale * BigReal(tol, digits))
      return {E, digits_used, iter};

    step_log10.push_back(step_abs.log10_abs());
    if (step_log10.size() > 6)
      step_log10.pop_front();

    // Cancellation floor: steps plateau above tolerance while the
    // determinant has burned through a good share of the digits.
    if (step_log10.size() >= 4) {
      double newest = step_log10.back();
      double oldest = step_log10[step_log10.size() - 4];
      bool plateau = std::fabs(newest - oldest) < 0.5;
      if (plateau && s.condition > 0.35 * digits)
        escalate();
    }
  }
  throw NoConvergence("newton iteration budget exhausted");
}

namespace {

LogDerivFn hankel_logderiv(const PotentialModel& model, int l, int d, int D) {
  return [&model, l, d, D](const BigComplex& E, int digits) -> LogDerivSample {
    SeriesRequest req{&model, l, E, 2 * D + d - 1, digits};
    SeriesEvaluation series = riccati_coefficients(req);
    LogDerivSample out;
    try {
      HankelEvaluation h = hankel_evaluate(series, D, d);
      out.exact_zero = h.exact_zero;
      out.condition = h.condition_estimate;
      if (h.has_dlog)
        out.dlog = h.dlog;
    } catch (const SingularToPrecision&) {
      out.singular = true;
    }
    return out;
  };
}

} // namespace

NewtonResult newton_polish(const PotentialModel& model, int l, int d, int D,
                           const BigComplex& seed, const PrecisionPolicy& policy,
                           double tol) {
  return newton_on_logderiv(hankel_logderiv(model, l, d, D), seed, policy,
                            policy.working_digits(D), tol);
}

std::vector<BigComplex> seed_scan(const PotentialModel& model, int l, int d, int D0,
                                  const SearchRegion& region,
                                  const PrecisionPolicy& policy) {
  region.validate();
  const int digits = policy.working_digits(D0);
  const int nre = region.grid_re, nim = region.grid_im;
  const double dre = (region.re_max - region.re_min) / (nre - 1);
  const double dim = (region.im_max - region.im_min) / (nim - 1);

  std::vector<double> grid((size_t)nre * nim);
  auto val = [&](int i, int j) { return grid[(size_t)i * nim + j]; };

  // Root-proximity landscape at dimension D0, rows parallelized. The
  // metric is the Newton step magnitude |H / H'|: like the normalized
  // determinant residual it is scale free, but it also dips at roots the
  // determinant inherits as a common factor of every matrix entry (the
  // hydrogen-like case where the whole matrix vanishes), which the
  // normalized residual cancels away exactly.
  std::vector<std::future<void>> jobs;
  int hw = std::max(1u, std::thread::hardware_concurrency());
  int chunk = (nre + hw - 1) / hw;
  for (int c = 0; c < nre; c += chunk) {
    jobs.push_back(std::async(std::launch::async, [&, c]() {
      for (int i = c; i < std::min(c + chunk, nre); ++i) {
        for (int j = 0; j < nim; ++j) {
          BigComplex E = BigComplex::from_doubles(region.re_min + i * dre,
                                                  region.im_min + j * dim, digits);
          SeriesRequest req{&model, l, E, 2 * D0 + d - 1, digits};
          SeriesEvaluation series = riccati_coefficients(req);
          double metric;
          try {
            HankelEvaluation h = hankel_evaluate(series, D0, d);
            if (h.exact_zero)
              metric = 0.0; // an exact root on the grid
            else if (!h.dlog.is_finite() || h.dlog.is_zero())
              metric = std::numeric_limits<double>::infinity();
            else
              metric = std::pow(10.0, -h.dlog.abs().log10_abs());
          } catch (const SingularToPrecision&) {
            metric = 0.0; // indistinguishable from a root at this precision
          }
          grid[(size_t)i * nim + j] = metric;
        }
      }
    }));
  }
  for (auto& j : jobs)
    j.get();

  std::vector<BigComplex> seeds;
  for (int i = 0; i < nre; ++i) {
    for (int j = 0; j < nim; ++j) {
      // Interior points need all 8 neighbors larger. Points on the
      // Im E = 0 edge are eligible too (with their 5 neighbors): narrow
      // resonances sit on the axis until the conjugate pair separates.
      bool interior = i > 0 && i < nre - 1 && j > 0 && j < nim - 1;
      bool on_real_axis_edge =
          j == nim - 1 && region.im_max == 0.0 && i > 0 && i < nre - 1;
      if (!interior && !on_real_axis_edge)
        continue;
      double v = val(i, j);
      bool minimum = true;
      for (int di = -1; di <= 1 && minimum; ++di) {
        for (int dj = -1; dj <= 1 && minimum; ++dj) {
          if (di == 0 && dj == 0)
            continue;
          int ii = i + di, jj = j + dj;
          if (ii < 0 || ii >= nre || jj < 0 || jj >= nim)
            continue;
          if (val(ii, jj) <= v)
            minimum = false;
        }
      }
      if (!minimum)
        continue;
      double re = region.re_min + i * dre;
      double im = region.im_min + j * dim;
      bool duplicate = false;
      for (const auto& s : seeds) {
        double dr = s.re().to_double() - re;
        double di2 = s.im().to_double() - im;
        if (std::hypot(dr, di2) < 1e-3) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate)
        seeds.push_back(BigComplex::from_doubles(re, im, digits));
    }
  }
  return seeds;
}

namespace {

// Snap a polished root to the lower half plane; zero out an imaginary part
// indistinguishable from the real axis at the polish tolerance.
BigComplex canonicalize(const BigComplex& root, double newton_tol) {
  BigComplex r = root;
  if (!r.im().is_negative() && !r.im().is_zero())
    r = r.conj();
  BigReal scale(1, r.digits());
  BigReal mag = r.abs();
  if (mag > scale)
    scale = mag;
  if (r.im().abs() < scale * BigReal(10.0 * newton_tol, r.digits()))
    r = BigComplex(r.re(), BigReal(r.digits()));
  return r;
}

// One polish attempt with the complex-kick rescue. A real-seeded iteration
// cannot leave the real axis, but past the dimension where the conjugate
// pair separates there is no nearby real root left; the imaginary part to
// expect is of the order of the latest real-part increments.
std::optional<BigComplex> polish_with_rescue(const PotentialModel& model, int l,
                                             int d, int D, const BigComplex& from,
                                             const BigComplex& anchor,
                                             double kick_scale,
                                             const PrecisionPolicy& policy,
                                             double newton_tol,
                                             ResonanceTrace& tr) {
  auto near_anchor = [&](const BigComplex& cand) {
    return (cand - anchor).abs() <= BigReal(0.5, 40);
  };
  try {
    NewtonResult nr = newton_polish(model, l, d, D, from, policy, newton_tol);
    BigComplex cand = canonicalize(nr.root, newton_tol);
    if (near_anchor(cand)) {
      tr.digits_used = std::max(tr.digits_used, nr.digits_used);
      return cand;
    }
  } catch (const NoConvergence&) {
  } catch (const PrecisionExhausted&) {
    tr.precision_exhausted = true;
    return std::nullopt;
  }
  double scale = 1.0 + from.abs().to_double();
  for (double kick : {std::max(kick_scale, 1e3 * newton_tol * scale), 1e-2 * scale}) {
    BigComplex kicked(from.re(), from.im() - BigReal(kick, from.digits()));
    try {
      NewtonResult nr = newton_polish(model, l, d, D, kicked, policy, newton_tol);
      BigComplex cand = canonicalize(nr.root, newton_tol);
      if (near_anchor(cand)) {
        tr.digits_used = std::max(tr.digits_used, nr.digits_used);
        return cand;
      }
    } catch (const NoConvergence&) {
    } catch (const PrecisionExhausted&) {
      tr.precision_exhausted = true;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// Follows one seed. The trace is anchored at D_anchor, the dimension the
// seed was located at, and extended upward to D_max and then downward
// toward D_min for as long as the sequence exists (broad states surface
// only at larger dimensions, so the downward walk may stop early). Keys
// stay contiguous.
ResonanceTrace follow_seed(const PotentialModel& model, int l, int d,
                           const BigComplex& seed, int D_anchor, int D_min,
                           int D_max, const PrecisionPolicy& policy,
                           double tol_target, double newton_tol) {
  ResonanceTrace tr;
  tr.l = l;
  tr.d = d;
  tr.status = TraceStatus::lost;
  tr.best_uncertainty = BigReal(40);

  auto anchor_root = polish_with_rescue(model, l, d, D_anchor, seed, seed,
                                        1e-4 * (1.0 + seed.abs().to_double()),
                                        policy, newton_tol, tr);
  if (!anchor_root)
    return tr; // no root near this seed at the anchor dimension

  tr.D_first = D_anchor;
  tr.roots.push_back(*anchor_root);
  tr.status = TraceStatus::converging;

  // Upward continuation, each root seeding the next dimension.
  double last_increment = 0.1;
  for (int D = D_anchor + 1; D <= D_max && !tr.precision_exhausted; ++D) {
    const BigComplex& prev = tr.roots.back();
    auto next = polish_with_rescue(model, l, d, D, prev, prev,
                                   2.0 * last_increment, policy, newton_tol, tr);
    if (!next) {
      tr.status = TraceStatus::lost;
      break;
    }
    last_increment = (*next - prev).abs().to_double();
    tr.roots.push_back(*next);
  }

  // Downward extension for the early part of the sequence; stops where the
  // sequence no longer exists.
  for (int D = D_anchor - 1; D >= D_min && !tr.precision_exhausted; --D) {
    BigComplex prev = tr.roots.front();
    auto next = polish_with_rescue(model, l, d, D, prev, prev, 0.0, policy,
                                   newton_tol, tr);
    if (!next)
      break;
    tr.roots.insert(tr.roots.begin(), *next);
    tr.D_first = D;
  }

  if (tr.roots.size() < 2) {
    tr.status = TraceStatus::lost;
    if (!tr.roots.empty())
      tr.best = tr.roots.back();
    return tr;
  }

  tr.best = tr.roots.back();
  tr.best_uncertainty = (tr.roots.back() - tr.roots[tr.roots.size() - 2]).abs();

  if (tr.status != TraceStatus::lost) {
    if (tr.best_uncertainty <= BigReal(tol_target, 40)) {
      tr.status = TraceStatus::converged;
    } else {
      auto s8 = trend_slope(tr, 8);
      auto s5 = trend_slope(tr, 5);
      if ((int)tr.roots.size() >= 8 && s8 && *s8 >= -0.05)
        tr.status = TraceStatus::stagnated;
      else if (s5 && *s5 < -0.05)
        tr.status = TraceStatus::converging;
      else
        tr.status = TraceStatus::stagnated;
    }
  }
  return tr;
}

} // namespace

std::vector<ResonanceTrace> continue_in_D(const PotentialModel& model, int l, int d,
                                          const std::vector<BigComplex>& seeds,
                                          int D_min, int D_max,
                                          const PrecisionPolicy& policy,
                                          double tol_target, int D_anchor) {
  if (D_anchor < 0)
    D_anchor = D_min;
  if (D_anchor < D_min || D_anchor > D_max)
    throw UsageError("anchor dimension outside the continuation range");
  if (D_min < 2)
    throw UsageError("continuation must start at dimension 2 or higher");
  if (D_max < D_min)
    throw UsageError("empty dimension range");
  if (tol_target <= 0.0)
    throw UsageError("target tolerance must be positive");
  policy.validate();

  const double newton_tol = tol_target * 1e-3;

  std::vector<std::future<ResonanceTrace>> jobs;
  for (const auto& s : seeds) {
    jobs.push_back(std::async(std::launch::async, [&, s]() {
      return follow_seed(model, l, d, s, D_anchor, D_min, D_max, policy,
                         tol_target, newton_tol);
    }));
  }
  std::vector<ResonanceTrace> traces;
  for (auto& j : jobs) {
    ResonanceTrace tr = j.get();
    // Rootless traces carry no information unless the precision cap is
    // what stopped them, which the caller needs to surface.
    if (!tr.roots.empty() || tr.precision_exhausted)
      traces.push_back(std::move(tr));
  }

  // Merge distinct seeds that landed on the same root sequence.
  std::vector<ResonanceTrace> merged;
  for (auto& tr : traces) {
    bool dup = false;
    for (auto& kept : merged) {
      BigReal dist = (tr.best - kept.best).abs();
      BigReal scale(1, 40);
      if (kept.best.abs() > scale)
        scale = kept.best.abs();
      BigReal tol_merge = scale * BigReal(10.0 * newton_tol, 40);
      BigReal unc = (tr.best_uncertainty + kept.best_uncertainty) * 3;
      if (unc > tol_merge)
        tol_merge = unc;
      if (dist <= tol_merge) {
        if (tr.roots.size() > kept.roots.size())
          kept = tr; // keep the longer history
        dup = true;
        break;
      }
    }
    if (!dup)
      merged.push_back(std::move(tr));
  }

  // nu by ascending Re(best) among converged traces.
  std::vector<ResonanceTrace*> conv;
  for (auto& tr : merged)
    if (tr.status == TraceStatus::converged)
      conv.push_back(&tr);
  std::sort(conv.begin(), conv.end(), [](const ResonanceTrace* a, const ResonanceTrace* b) {
    return a->best.re() < b->best.re();
  });
  for (size_t i = 0; i < conv.size(); ++i)
    conv[i]->nu = (int)i;

  std::sort(merged.begin(), merged.end(), [](const ResonanceTrace& a, const ResonanceTrace& b) {
    if (a.status != b.status)
      return (int)a.status < (int)b.status;
    return a.best.re().to_double() < b.best.re().to_double();
  });
  return merged;
}

std::vector<ConvergenceRow> convergence_report(const ResonanceTrace& trace) {
  if (trace.roots.size() < 3)
    throw TooShort("convergence report needs at least three recorded dimensions");
  std::vector<ConvergenceRow> rows;
  for (size_t k = 0; k + 1 < trace.roots.size(); ++k) {
    ConvergenceRow row;
    row.D = trace.D_first + (int)k;
    BigReal dre = (trace.roots[k].re() - trace.roots[k + 1].re()).abs();
    BigReal dim = (trace.roots[k].im() - trace.roots[k + 1].im()).abs();
    row.re_sentinel = dre.is_zero();
    row.im_sentinel = dim.is_zero();
    row.L_re = row.re_sentinel ? -std::numeric_limits<double>::infinity()
                               : dre.log10_abs();
    row.L_im = row.im_sentinel ? -std::numeric_limits<double>::infinity()
                               : dim.log10_abs();
    rows.push_back(row);
  }
  return rows;
}

std::optional<double> trend_slope(const ResonanceTrace& trace, int window) {
  std::vector<std::pair<double, double>> pts;
  size_t n = trace.roots.size();
  if (n < 2)
    return std::nullopt;
  size_t from = n - 1 > (size_t)window ? n - 1 - window : 0;
  for (size_t k = from; k + 1 < n; ++k) {
    BigReal step = (trace.roots[k] - trace.roots[k + 1]).abs();
    if (step.is_zero())
      continue;
    pts.emplace_back((double)(trace.D_first + (int)k), step.log10_abs());
  }
  if (pts.size() < 2)
    return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double num = pts.size() * sxy - sx * sy;
  double den = pts.size() * sxx - sx * sx;
  if (den == 0)
    return std::nullopt;
  return num / den;
}

} // namespace siegert
