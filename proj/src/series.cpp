// SPDX-License-Identifier: Apache-2.0
#include "series.hpp"

namespace siegert {

SeriesEvaluation riccati_coefficients(const SeriesRequest& req) {
  if (!req.model)
    throw UsageError("series request has no potential model");
  if (req.l < 0)
    throw UsageError("angular momentum must be nonnegative");
  if (req.order < 1)
    throw UsageError("series order must be at least 1");

  const int M = req.order;
  const int d = req.digits;
  const PotentialModel& model = *req.model;
  const BigComplex E = req.energy.to_digits(d);

  SeriesEvaluation out;
  out.l = req.l;
  out.digits = d;
  out.f.reserve(M + 1);
  out.df_dE.reserve(M + 1);

  // f_0 = -Z/(l+1), independent of E.
  mpq_class f0q = -model.Z() / (req.l + 1);
  out.f.emplace_back(BigReal::from_mpq(f0q.get_mpq_t(), d), BigReal(d));
  out.df_dE.emplace_back(BigComplex(d));

  const BigComplex two_E = E * 2;
  const BigComplex two(2, d);

  for (int n = 0; n < M; ++n) {
    BigComplex acc(d);
    BigComplex dacc(d);
    for (int j = 0; j <= n; ++j) {
      acc += out.f[j] * out.f[n - j];
      dacc += out.f[j] * out.df_dE[n - j];
    }
    dacc = dacc * 2;
    if (n == 0) {
      acc += two_E;
      dacc += two;
    }
    acc -= BigComplex(model.coefficient_real((unsigned)n, d) * 2, BigReal(d));
    long divisor = n + 2L * req.l + 3;
    out.f.push_back(acc / divisor);
    out.df_dE.push_back(dacc / divisor);
  }
  return out;
}

int coefficient_degree(int j, int l) {
  (void)l; // the degree pattern does not depend on l
  if (j < 0)
    throw UsageError("coefficient index must be nonnegative");
  if (j == 0)
    return 0;
  return (j + 1) / 2;
}

} // namespace siegert
