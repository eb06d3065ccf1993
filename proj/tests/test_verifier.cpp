// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>

#include "verifier.hpp"

using namespace siegert;

namespace {

PotentialModel paper_model() {
  return make_paper_potential(decimal_to_mpq("7.5"), decimal_to_mpq("-1"));
}

PotentialModel hydrogen_model() {
  return make_paper_potential(mpq_class(0), decimal_to_mpq("-1"));
}

} // namespace

TEST_CASE("hydrogen levels") {
  auto s = hydrogen_levels(0, 2);
  REQUIRE(s.size() == 2);
  CHECK(s[0] == mpq_class(-1, 2));
  CHECK(s[1] == mpq_class(-1, 8));

  auto p = hydrogen_levels(1, 3);
  REQUIRE(p.size() == 2);
  CHECK(p[0] == mpq_class(-1, 8));
  CHECK(p[1] == mpq_class(-1, 18));

  auto d = hydrogen_levels(2, 3);
  REQUIRE(d.size() == 1);
  CHECK(d[0] == mpq_class(-1, 18));
}

TEST_CASE("hydrogen ground state satisfies the outgoing condition to integration accuracy") {
  // f == 1, so g(R) = 1/R - 1 while ik = -1 and the 1/R Coulomb correction
  // is exact: the residual is pure integration error.
  PotentialModel hyd = hydrogen_model();
  SiegertResidual r = siegert_residual(hyd, 0, BigComplex("-0.5", "0", 60), 0.1,
                                       30.0, 12000);
  CHECK(r.residual < 1e-12);
  CHECK(r.k.re().is_zero());
  CHECK(r.k.im().to_double() == doctest::Approx(1.0));
  BigComplex expect = BigComplex(BigReal(1, 60) / 30 - BigReal(1, 60), BigReal(60));
  CHECK((r.g_at_R - expect).abs().to_double() < 1e-10);
}

TEST_CASE("step halving leaves g(R) unchanged to 1e-10") {
  PotentialModel hyd = hydrogen_model();
  SiegertResidual a = siegert_residual(hyd, 0, BigComplex("-0.5", "0", 60), 0.1,
                                       30.0, 12000);
  SiegertResidual b = siegert_residual(hyd, 0, BigComplex("-0.5", "0", 60), 0.1,
                                       30.0, 24000);
  double rel = (a.g_at_R - b.g_at_R).abs().to_double() / b.g_at_R.abs().to_double();
  CHECK(rel < 1e-10);
}

TEST_CASE("a wavefunction node forces the displaced path and still verifies") {
  // n=2 state: Phi = r (1 - r/2) e^(-r/2) has a node at r = 2, a pole of g
  // right on the straight path.
  PotentialModel hyd = hydrogen_model();
  SiegertResidual r = siegert_residual(hyd, 0, BigComplex("-0.125", "0", 60), 0.1,
                                       30.0, 12000);
  CHECK(r.displaced_path);
  CHECK(r.residual < 1e-8);
}

TEST_CASE("residual discriminates the resonance from a nearby non-eigenvalue") {
  PotentialModel pot = paper_model();
  // reference resonance position for V0=7.5, Z=-1 (s-wave, lowest)
  BigComplex root("1.7805245363623048", "-0.00004785969842876", 60);
  SiegertResidual at_root = siegert_residual(pot, 0, root, 0.1, 30.0, 12000);
  CHECK(at_root.residual < 1e-4);

  SiegertResidual off = siegert_residual(pot, 0, BigComplex(2, 60), 0.1, 30.0, 12000);
  CHECK(off.residual > 100.0 * at_root.residual);
}

TEST_CASE("residual decreases with matching radius for an outgoing-dominant state") {
  PotentialModel pot = paper_model();
  BigComplex root("4.101494946209", "-0.578627213766", 60);
  SiegertResidual near = siegert_residual(pot, 0, root, 0.1, 20.0, 9000);
  SiegertResidual far = siegert_residual(pot, 0, root, 0.1, 40.0, 18000);
  CHECK(far.residual < near.residual);
}

TEST_CASE("verify_trace accepts the true level and rejects a perturbed one") {
  PotentialModel hyd = hydrogen_model();
  ResonanceTrace tr;
  tr.l = 0;
  tr.d = 0;
  tr.status = TraceStatus::converged;
  tr.best = BigComplex("-0.5", "0", 60);
  tr.best_uncertainty = BigReal("1e-28", 40);
  tr.roots.push_back(tr.best);
  tr.roots.push_back(tr.best);

  VerifyReport ok = verify_trace(tr, hyd);
  CHECK(ok.pass);

  ResonanceTrace wrong = tr;
  wrong.best = BigComplex("-0.51", "0", 60);
  VerifyReport bad = verify_trace(wrong, hyd);
  CHECK(!bad.pass);

  ResonanceTrace unconverged = tr;
  unconverged.status = TraceStatus::converging;
  CHECK_THROWS_AS(verify_trace(unconverged, hyd), UsageError);
}

TEST_CASE("geometry validation") {
  PotentialModel hyd = hydrogen_model();
  CHECK_THROWS_AS(
      siegert_residual(hyd, 0, BigComplex("-0.5", "0", 60), 5.0, 2.0, 1000),
      UsageError);
  CHECK_THROWS_AS(
      siegert_residual(hyd, 0, BigComplex("-0.5", "0", 60), 0.1, 30.0, 2),
      UsageError);
}
