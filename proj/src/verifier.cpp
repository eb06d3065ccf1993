// SPDX-License-Identifier: Apache-2.0
#include "verifier.hpp"

#include <algorithm>
#include <cmath>

namespace siegert {

std::vector<mpq_class> hydrogen_levels(int l, int n_max) {
  if (l < 0)
    throw UsageError("angular momentum must be nonnegative");
  std::vector<mpq_class> levels;
  for (int n = l + 1; n <= n_max; ++n)
    levels.push_back(mpq_class(-1) / (2L * n * n));
  return levels;
}

namespace {

constexpr int kTaylorOrder = 24;

// Taylor coefficients of W(r) = l(l+1)/r^2 + 2Z/r + 2 V0 r^2 e^-r - 2E
// about the (complex) point rc, offsets t^n for n = 0..order:
//
//   l(l+1)/r^2 -> l(l+1) (-1)^n (n+1) / rc^(n+2)
//   2Z/r       -> 2Z (-1)^n / rc^(n+1)
//   r^2 e^-r   -> e^-rc (-1)^n [rc^2/n! - 2 rc/(n-1)! + 1/(n-2)!]
std::vector<BigComplex> potential_coefficients(const PotentialModel& model, int l,
                                               const BigComplex& E,
                                               const BigComplex& rc, int order,
                                               int digits) {
  std::vector<BigComplex> W((size_t)order + 1, BigComplex(digits));
  const BigComplex inv_rc = BigComplex(1, digits) / rc;
  const long cent = (long)l * (l + 1);
  const BigReal two_z = model.coulomb_real(digits) * 2;

  BigComplex pw = inv_rc; // 1/rc^(n+1)
  for (int n = 0; n <= order; ++n) {
    BigComplex sum = pw * two_z;
    if (cent != 0)
      sum += (pw * inv_rc) * (cent * (long)(n + 1));
    W[(size_t)n] = (n % 2 == 0) ? sum : -sum;
    pw = pw * inv_rc;
  }

  if (model.V0() != 0) {
    std::vector<BigReal> inv_fact;
    inv_fact.reserve(order + 1);
    inv_fact.emplace_back(1, digits);
    for (int m = 1; m <= order; ++m)
      inv_fact.push_back(inv_fact.back() / m);

    const BigComplex expf = (-rc).exp();
    const BigReal v0_x2 = BigReal::from_mpq(model.V0().get_mpq_t(), digits) * 2;
    const BigComplex rc2 = rc * rc;
    for (int n = 0; n <= order; ++n) {
      BigComplex bracket = rc2 * inv_fact[(size_t)n];
      if (n >= 1)
        bracket -= rc * (inv_fact[(size_t)(n - 1)] * 2);
      if (n >= 2)
        bracket += BigComplex(inv_fact[(size_t)(n - 2)], BigReal(digits));
      BigComplex term = expf * (bracket * v0_x2);
      W[(size_t)n] += (n % 2 == 0) ? term : -term;
    }
  }

  W[0] -= E * 2;
  return W;
}

struct StepOutcome {
  BigComplex g;
  bool pole = false;
};

// One Taylor step of g' = W(r) - g^2 from rc to rc + h.
StepOutcome taylor_step(const PotentialModel& model, int l, const BigComplex& E,
                        const BigComplex& rc, const BigComplex& g0,
                        const BigComplex& h, int digits) {
  std::vector<BigComplex> W =
      potential_coefficients(model, l, E, rc, kTaylorOrder, digits);
  std::vector<BigComplex> a;
  a.reserve(kTaylorOrder + 1);
  a.push_back(g0);
  for (int n = 0; n < kTaylorOrder; ++n) {
    BigComplex conv(digits);
    for (int i = 0; i <= n; ++i)
      conv += a[(size_t)i] * a[(size_t)(n - i)];
    a.push_back((W[(size_t)n] - conv) / (n + 1));
  }
  // Horner evaluation at h, plus a convergence check on the tail: a pole
  // of g inside the step radius makes the local series useless.
  BigComplex acc = a.back();
  for (int n = kTaylorOrder - 1; n >= 0; --n)
    acc = acc * h + a[(size_t)n];

  BigReal habs = h.abs();
  BigReal tail = a.back().abs();
  for (int n = 0; n < kTaylorOrder; ++n)
    tail = tail * habs;
  BigReal scale = acc.abs() + BigReal(1, digits);
  StepOutcome out{acc, false};
  if (tail > scale * BigReal(1e-10, digits))
    out.pole = true;
  return out;
}

struct Leg {
  BigComplex from, to;
};

// Integrates g along the polyline legs with `steps` total fixed steps
// (distributed by length). Returns g at the final point or throws
// PoleEncountered.
BigComplex integrate_path(const PotentialModel& model, int l, const BigComplex& E,
                          const std::vector<Leg>& legs, const BigComplex& g_start,
                          int steps, int digits) {
  double total = 0.0;
  for (const auto& leg : legs)
    total += (leg.to - leg.from).abs().to_double();

  BigComplex g = g_start;
  const BigReal pole_mag(std::string("1e") + std::to_string(digits / 2), 32);
  for (const auto& leg : legs) {
    double len = (leg.to - leg.from).abs().to_double();
    int n = std::max(1, (int)std::lround(steps * len / total));
    BigComplex h = (leg.to - leg.from) / n;
    BigComplex rc = leg.from;
    for (int s = 0; s < n; ++s) {
      if (g.abs() > pole_mag)
        throw PoleEncountered("logarithmic derivative exceeded 10^(digits/2)");
      StepOutcome st = taylor_step(model, l, E, rc, g, h, digits);
      if (st.pole)
        throw PoleEncountered("Taylor step tail did not converge (pole nearby)");
      g = st.g;
      rc = rc + h;
    }
  }
  return g;
}

// g_asym(R) = ik + sum c_m / R^m from the large-r Riccati balance.
BigComplex asymptote(const BigComplex& k, const mpq_class& Z, int l, double R,
                     int order, int digits) {
  const BigComplex ik = BigComplex(BigReal(digits), BigReal(1, digits)) * k;
  std::vector<BigComplex> c;
  c.push_back(BigComplex(digits)); // c_0 unused
  BigComplex z_over_ik = BigComplex(BigReal::from_mpq(Z.get_mpq_t(), digits),
                                    BigReal(digits)) /
                         ik;
  c.push_back(z_over_ik); // c_1
  const BigComplex two_ik = ik * 2;
  for (int p = 2; p <= order; ++p) {
    BigComplex rhs(digits);
    if (p == 2)
      rhs = BigComplex(BigReal((long)l * (l + 1), digits), BigReal(digits));
    rhs += c[(size_t)(p - 1)] * (p - 1);
    for (int m = 1; m <= p - 1; ++m)
      rhs -= c[(size_t)m] * c[(size_t)(p - m)];
    c.push_back(rhs / two_ik);
  }
  BigComplex out = ik;
  BigComplex invR = BigComplex(1, digits) / BigComplex(BigReal(R, digits), BigReal(digits));
  BigComplex pw = invR;
  for (int m = 1; m <= order; ++m) {
    out += c[(size_t)m] * pw;
    pw = pw * invR;
  }
  return out;
}

} // namespace

SiegertResidual siegert_residual(const PotentialModel& model, int l,
                                 const BigComplex& E, double r0, double R,
                                 int steps, int digits, int init_order,
                                 int asym_order) {
  if (!(0.0 < r0 && r0 < R))
    throw UsageError("need 0 < r0 < R");
  if (steps < 10)
    throw UsageError("need at least 10 integration steps");

  const BigComplex E_w = E.to_digits(digits);
  SiegertResidual out;
  out.E = E_w;
  out.R = R;
  out.k = (E_w * 2).sqrt();

  // Outgoing branch: Re k >= 0; for E < 0 the principal square root already
  // gives Im k > 0 (the decaying bound-state channel).

  auto init_g = [&](double at) {
    SeriesRequest req{&model, l, E_w, init_order, digits};
    SeriesEvaluation sev = riccati_coefficients(req);
    BigReal r(at, digits);
    BigComplex f_sum(digits);
    for (int j = init_order; j >= 0; --j)
      f_sum = f_sum * BigComplex(r, BigReal(digits)) + sev.f[(size_t)j];
    return BigComplex(BigReal((long)(l + 1), digits) / r, BigReal(digits)) - f_sum;
  };

  struct Attempt {
    double r0;
    double depth; // 0 = straight path
  };
  const Attempt attempts[] = {{r0, 0.0}, {r0 * 1.03, 0.0}, {r0, 0.05}, {r0, 0.2}};

  int poles = 0;
  for (const Attempt& at : attempts) {
    std::vector<Leg> legs;
    BigComplex start = BigComplex(BigReal(at.r0, digits), BigReal(digits));
    BigComplex end = BigComplex(BigReal(R, digits), BigReal(digits));
    if (at.depth == 0.0) {
      legs.push_back({start, end});
    } else {
      BigComplex down(BigReal(at.r0, digits), BigReal(-at.depth, digits));
      BigComplex across(BigReal(R, digits), BigReal(-at.depth, digits));
      legs.push_back({start, down});
      legs.push_back({down, across});
      legs.push_back({across, end});
    }
    try {
      BigComplex g = integrate_path(model, l, E_w, legs, init_g(at.r0), steps, digits);
      out.g_at_R = g;
      out.g_asym = asymptote(out.k, model.Z(), l, R, asym_order, digits);
      out.residual = (g - out.g_asym).abs().to_double();
      out.displaced_path = at.depth != 0.0;
      return out;
    } catch (const PoleEncountered&) {
      ++poles;
    }
  }
  throw PoleEncountered("pole on every integration path (" +
                        std::to_string(poles) + " attempts)");
}

VerifyReport verify_trace(const ResonanceTrace& trace, const PotentialModel& model,
                          const VerifierSettings& s) {
  if (trace.status != TraceStatus::converged)
    throw UsageError("verification requires a converged trace");

  VerifyReport rep;
  double scale = 1.0 + trace.best.abs().to_double();
  rep.probe = std::max(trace.best_uncertainty.to_double(), s.min_probe * scale);

  auto residual_at = [&](const BigComplex& E) {
    return siegert_residual(model, trace.l, E, s.r0, s.R, s.steps, s.digits,
                            s.init_order, s.asym_order)
        .residual;
  };

  BigReal probe(rep.probe, trace.best.digits());
  rep.residual_best = residual_at(trace.best);
  rep.residual_below = residual_at(BigComplex(trace.best.re() - probe, trace.best.im()));
  rep.residual_above = residual_at(BigComplex(trace.best.re() + probe, trace.best.im()));

  // The landscape is flat at the asymptote/tail floor once the probe's
  // signal has decayed below it (broad states), so ties must count as
  // minimal; only a residual clearly above both neighbors is rejected.
  double neighbors = std::max(rep.residual_below, rep.residual_above);
  bool minimal = rep.residual_best <= 1.5 * neighbors;
  bool small = rep.residual_best < s.residual_threshold;
  rep.pass = minimal && small;
  rep.message = rep.pass ? "ok"
                         : (!small ? "residual above threshold"
                                   : "residual not minimal at the estimate");
  return rep;
}

} // namespace siegert
