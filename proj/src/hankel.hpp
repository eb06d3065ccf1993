// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "series.hpp"

namespace siegert {

/// Value and logarithmic energy-derivative of the determinant of the D x D
/// matrix with entries f_{i+j+d-1}.
struct HankelEvaluation {
  BigComplex value;        ///< det H (exact zero when the matrix is)
  BigComplex dlog;         ///< d/dE log det = tr(H^-1 H'); valid iff has_dlog
  bool has_dlog = false;   ///< false when the determinant vanished exactly
  bool exact_zero = false; ///< a pivot (or the whole matrix) was exactly zero
  int D = 0;
  int d = 0;
  int digits_used = 0;
  double condition_estimate = 0.0; ///< log10 of the LU pivot growth factor
};

/// The D x D matrix with entry (i,j) = f_{i+j+d-1} (1-based), row-major.
/// Throws InsufficientOrder when the series carries fewer than 2D+d-1
/// coefficients.
std::vector<BigComplex> hankel_matrix(const SeriesEvaluation& series, int D, int d);

/// Determinant by LU with partial pivoting at the series' precision, and
/// dlog = tr(H^-1 H') by Jacobi's formula reusing the LU factors, where H'
/// has entries df_dE[i+j+d-1]. Newton only ever needs H'/H, so raw
/// determinant magnitudes never leave this function unscaled.
///
/// Throws SingularToPrecision when a nonzero pivot falls below
/// 10^(-digits/2) relative to the largest matrix entry: the energy is
/// either a root to working precision or more digits are needed. An
/// exactly zero pivot is not an error; it reports value = 0 with
/// exact_zero set.
HankelEvaluation hankel_evaluate(const SeriesEvaluation& series, int D, int d);

/// |det H| normalized by the product of the rows' max-norms: a scale-free
/// "is this a root" residual in [0, inf). Zero when every row vanishes.
double root_condition_residual(const SeriesEvaluation& series, int D, int d);

} // namespace siegert
