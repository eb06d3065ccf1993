// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "numerics.hpp"
#include "potential.hpp"

namespace siegert {

/// Inputs for one evaluation of the Taylor coefficients of the regularized
/// logarithmic derivative f(r) = (l+1)/r - Phi'(r)/Phi(r).
struct SeriesRequest {
  const PotentialModel* model = nullptr;
  int l = 0;          ///< angular momentum, >= 0
  BigComplex energy;  ///< trial energy
  int order = 1;      ///< highest coefficient index M, >= 1
  int digits = 40;    ///< working precision
};

/// Coefficients f_0..f_M and their energy derivatives at the trial energy.
struct SeriesEvaluation {
  std::vector<BigComplex> f;
  std::vector<BigComplex> df_dE;
  int l = 0;
  int digits = 0;
  int order() const { return (int)f.size() - 1; }
};

/// Evaluates the Riccati recurrence at the request's energy.
///
/// Substituting Phi'/Phi = (l+1)/r - f into the radial equation gives
/// f' = f^2 - 2(l+1) f / r - 2 V + 2 E; matching powers of r yields
///
///   f_0 = -Z / (l+1)
///   (n + 2l + 3) f_{n+1} = sum_{j=0..n} f_j f_{n-j} + 2E delta_{n,0} - 2 v_n
///
/// and the term-by-term energy derivative
///
///   (n + 2l + 3) f'_{n+1} = 2 sum_{j=0..n} f_j f'_{n-j} + 2 delta_{n,0}.
///
/// The divisors n+2l+3 are positive integers, so the recurrence never
/// breaks down.
SeriesEvaluation riccati_coefficients(const SeriesRequest& req);

/// Degree of f_j as a polynomial in the energy: 0 for j = 0 and
/// floor((j+1)/2) for j >= 1.
int coefficient_degree(int j, int l);

} // namespace siegert
