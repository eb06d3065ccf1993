// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>

#include "solver.hpp"

using namespace siegert;

namespace {

PotentialModel paper_model() {
  return make_paper_potential(decimal_to_mpq("7.5"), decimal_to_mpq("-1"));
}

PotentialModel hydrogen_model() {
  return make_paper_potential(mpq_class(0), decimal_to_mpq("-1"));
}

PrecisionPolicy default_policy() { return PrecisionPolicy{}; }

} // namespace

TEST_CASE("newton driver solves an analytic quadratic") {
  // g(E) = E^2 + 1, dlog = 2E / (E^2 + 1); root at +i from the upper seed
  LogDerivFn fn = [](const BigComplex& E, int digits) {
    LogDerivSample s;
    BigComplex g = E * E + BigComplex(1, digits);
    if (g.is_zero()) {
      s.exact_zero = true;
      return s;
    }
    s.dlog = (E * 2) / g;
    return s;
  };
  NewtonResult r = newton_on_logderiv(fn, BigComplex::from_doubles(0.5, 0.8, 40),
                                      default_policy(), 40, 1e-32);
  CHECK((r.root - BigComplex::from_doubles(0.0, 1.0, 40)).abs() < BigReal("1e-30", 40));
}

TEST_CASE("newton escalates and eventually reports precision exhausted") {
  LogDerivFn always_singular = [](const BigComplex&, int) {
    LogDerivSample s;
    s.singular = true;
    return s;
  };
  PrecisionPolicy p;
  p.max_digits = 100;
  CHECK_THROWS_AS(
      newton_on_logderiv(always_singular, BigComplex(1, 40), p, 40, 1e-20),
      PrecisionExhausted);
}

TEST_CASE("one-dimensional determinant root lands exactly") {
  // H_1 = f_1 = (1+2E)/3: one Newton step from -0.4 hits -1/2 exactly
  PotentialModel pot = paper_model();
  NewtonResult r = newton_polish(pot, 0, 0, 1, BigComplex("-0.4", "0", 40),
                                 default_policy(), 1e-25);
  CHECK(r.root.re() == BigReal("-0.5", 40));
  CHECK(r.root.im().is_zero());
}

TEST_CASE("polishing the conjugate seed yields the conjugate root") {
  PotentialModel pot = paper_model();
  BigComplex seed = BigComplex::from_doubles(4.2, -0.5, 40);
  NewtonResult a = newton_polish(pot, 0, 0, 8, seed, default_policy(), 1e-25);
  NewtonResult b = newton_polish(pot, 0, 0, 8, seed.conj(), default_policy(), 1e-25);
  CHECK(b.root == a.root.conj());
}

TEST_CASE("hydrogen seeds polish to the analytic levels") {
  PotentialModel hyd = hydrogen_model();
  SearchRegion region;
  region.re_min = -0.6;
  region.re_max = -0.05;
  region.im_min = -0.01;
  region.im_max = 0.0;
  region.grid_re = 24;
  region.grid_im = 4;
  auto seeds = seed_scan(hyd, 0, 0, 4, region, default_policy());
  REQUIRE(!seeds.empty());

  bool found_ground = false, found_excited = false;
  for (const auto& s : seeds) {
    NewtonResult r = newton_polish(hyd, 0, 0, 4, s, default_policy(), 1e-28);
    double re = r.root.re().to_double();
    if (std::fabs(re + 0.5) < 1e-20)
      found_ground = true;
    if (std::fabs(re + 0.125) < 1e-20)
      found_excited = true;
  }
  CHECK(found_ground);
  CHECK(found_excited);
}

TEST_CASE("empty region yields no seeds") {
  PotentialModel pot = paper_model();
  SearchRegion region;
  region.re_min = 100.0;
  region.re_max = 101.0;
  region.im_min = -0.01;
  region.im_max = 0.0;
  region.grid_re = 8;
  region.grid_im = 4;
  auto seeds = seed_scan(pot, 0, 0, 6, region, default_policy());
  CHECK(seeds.empty());
}

TEST_CASE("hydrogen traces converge to -1/(2n^2) with tiny uncertainty") {
  PotentialModel hyd = hydrogen_model();
  SearchRegion region;
  region.re_min = -0.6;
  region.re_max = -0.05;
  region.im_min = -0.01;
  region.im_max = 0.0;
  region.grid_re = 24;
  region.grid_im = 4;
  auto seeds = seed_scan(hyd, 0, 0, 4, region, default_policy());
  auto traces = continue_in_D(hyd, 0, 0, seeds, 4, 10, default_policy(), 1e-28);

  const ResonanceTrace* ground = nullptr;
  const ResonanceTrace* excited = nullptr;
  for (const auto& tr : traces) {
    if (tr.status != TraceStatus::converged)
      continue;
    double re = tr.best.re().to_double();
    if (std::fabs(re + 0.5) < 1e-6)
      ground = &tr;
    if (std::fabs(re + 0.125) < 1e-6)
      excited = &tr;
  }
  REQUIRE(ground != nullptr);
  REQUIRE(excited != nullptr);

  CHECK((ground->best - BigComplex("-0.5", "0", 80)).abs() < BigReal("1e-27", 40));
  CHECK((excited->best - BigComplex("-0.125", "0", 80)).abs() < BigReal("1e-27", 40));
  CHECK(ground->best_uncertainty < BigReal("1e-30", 40));
  CHECK(excited->best_uncertainty < BigReal("1e-25", 40));
  CHECK(ground->best.im().is_zero());

  // nu ordering: ascending Re(best)
  CHECK(ground->nu == 0);
  CHECK(excited->nu == 1);

  // monotone refinement over the last dimensions, factor-3 jitter allowed
  for (const ResonanceTrace* tr : {ground, excited}) {
    size_t n = tr->roots.size();
    for (size_t k = n >= 5 ? n - 5 : 0; k + 1 < n; ++k) {
      BigReal a = (tr->roots[k] - tr->best).abs();
      BigReal b = (tr->roots[k + 1] - tr->best).abs();
      CHECK(b <= a * 3 + BigReal("1e-30", 40));
    }
  }
}

TEST_CASE("hydrogen p-wave trace finds the n=2 level") {
  PotentialModel hyd = hydrogen_model();
  SearchRegion region;
  region.re_min = -0.3;
  region.re_max = -0.05;
  region.im_min = -0.01;
  region.im_max = 0.0;
  region.grid_re = 16;
  region.grid_im = 4;
  auto seeds = seed_scan(hyd, 1, 0, 4, region, default_policy());
  auto traces = continue_in_D(hyd, 1, 0, seeds, 4, 9, default_policy(), 1e-25);
  bool found = false;
  for (const auto& tr : traces)
    if (tr.status == TraceStatus::converged &&
        std::fabs(tr.best.re().to_double() + 0.125) < 1e-12)
      found = true;
  CHECK(found);
}

TEST_CASE("convergence report rows and sentinels") {
  ResonanceTrace tr;
  tr.l = 0;
  tr.d = 0;
  tr.D_first = 10;
  tr.roots.push_back(BigComplex("1.78053", "0", 40));
  tr.roots.push_back(BigComplex("1.78052", "0", 40));
  tr.roots.push_back(BigComplex("1.78052", "0", 40));
  auto rows = convergence_report(tr);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].D == 10);
  CHECK(rows[0].L_re == doctest::Approx(-5.0).epsilon(1e-6));
  CHECK(rows[0].im_sentinel); // imaginary parts identical (zero diff)
  CHECK(rows[1].re_sentinel); // identical consecutive roots
  CHECK(std::isinf(rows[1].L_re));

  ResonanceTrace tiny;
  tiny.roots.push_back(BigComplex(1, 40));
  tiny.roots.push_back(BigComplex(2, 40));
  CHECK_THROWS_AS(convergence_report(tiny), TooShort);
}

TEST_CASE("region and argument validation") {
  PotentialModel pot = paper_model();
  SearchRegion bad;
  bad.re_min = 2.0;
  bad.re_max = 1.0;
  CHECK_THROWS_AS(bad.validate(), UsageError);
  SearchRegion coarse;
  coarse.grid_re = 2;
  CHECK_THROWS_AS(seed_scan(pot, 0, 0, 4, coarse, default_policy()), UsageError);
  CHECK_THROWS_AS(continue_in_D(pot, 0, 0, {}, 1, 5, default_policy(), 1e-10),
                  UsageError);
  CHECK_THROWS_AS(continue_in_D(pot, 0, 0, {}, 5, 4, default_policy(), 1e-10),
                  UsageError);
}
