// SPDX-License-Identifier: Apache-2.0
#include "hankel.hpp"

#include <algorithm>
#include <cmath>

namespace siegert {

std::vector<BigComplex> hankel_matrix(const SeriesEvaluation& series, int D, int d) {
  if (D < 1)
    throw UsageError("hankel dimension must be positive");
  if (d < 0)
    throw UsageError("hankel displacement must be nonnegative");
  if (series.order() < 2 * D + d - 1)
    throw InsufficientOrder("series of order " + std::to_string(series.order()) +
                            " is too short for D=" + std::to_string(D) +
                            ", d=" + std::to_string(d));
  std::vector<BigComplex> m;
  m.reserve((size_t)D * D);
  for (int i = 1; i <= D; ++i)
    for (int j = 1; j <= D; ++j)
      m.push_back(series.f[(size_t)(i + j + d - 1)]);
  return m;
}

namespace {

struct LuFactors {
  std::vector<BigComplex> lu; // packed L\U, row-major
  std::vector<int> perm;      // row permutation
  int sign = 1;
  bool exact_zero = false;
  double growth_log10 = 0.0;
};

// LU with partial pivoting on |entry|^2 comparisons. Throws
// SingularToPrecision for relatively-tiny nonzero pivots (unless
// tolerate_tiny, where a tiny pivot just yields a tiny determinant);
// flags an exactly zero pivot instead of dividing by it.
LuFactors factorize(std::vector<BigComplex> m, int D, int digits,
                    bool tolerate_tiny = false) {
  LuFactors out;
  out.perm.resize(D);
  for (int i = 0; i < D; ++i)
    out.perm[i] = i;

  // Largest |entry|^2 of the input, for the relative pivot floor and the
  // growth estimate.
  BigReal max0(digits);
  for (const auto& z : m) {
    BigReal n2 = z.norm2();
    if (n2 > max0)
      max0 = n2;
  }
  if (max0.is_zero()) {
    out.lu = std::move(m);
    out.exact_zero = true;
    return out;
  }
  // floor = max0 * 10^(-digits) compares against |pivot|^2, i.e. a pivot
  // 10^(-digits/2) below the largest entry.
  BigReal floor_n2 = max0 * BigReal(std::string("1e-") + std::to_string(digits), 32);
  BigReal growth = max0;

  auto at = [&](int i, int j) -> BigComplex& { return m[(size_t)i * D + j]; };

  for (int k = 0; k < D; ++k) {
    int best = k;
    BigReal best_n2 = at(k, k).norm2();
    for (int i = k + 1; i < D; ++i) {
      BigReal n2 = at(i, k).norm2();
      if (n2 > best_n2) {
        best_n2 = n2;
        best = i;
      }
    }
    if (best != k) {
      for (int j = 0; j < D; ++j)
        std::swap(at(k, j), at(best, j));
      std::swap(out.perm[k], out.perm[best]);
      out.sign = -out.sign;
    }
    if (best_n2.is_zero()) {
      out.exact_zero = true;
      out.lu = std::move(m);
      return out;
    }
    if (!tolerate_tiny && best_n2 < floor_n2)
      throw SingularToPrecision("pivot " + std::to_string(k) + " below 10^(-" +
                                    std::to_string(digits) + "/2) of the largest entry",
                                digits);
    for (int i = k + 1; i < D; ++i) {
      BigComplex factor = at(i, k) / at(k, k);
      for (int j = k + 1; j < D; ++j) {
        at(i, j) -= factor * at(k, j);
        BigReal n2 = at(i, j).norm2();
        if (n2 > growth)
          growth = n2;
      }
      at(i, k) = factor;
    }
  }
  out.growth_log10 = 0.5 * (growth.log10_abs() - max0.log10_abs());
  out.lu = std::move(m);
  return out;
}

// Solves LU x = b in place given packed factors (b already permuted).
void solve_inplace(const LuFactors& f, int D, std::vector<BigComplex>& b) {
  auto at = [&](int i, int j) -> const BigComplex& { return f.lu[(size_t)i * D + j]; };
  for (int i = 1; i < D; ++i)
    for (int j = 0; j < i; ++j)
      b[i] -= at(i, j) * b[j];
  for (int i = D - 1; i >= 0; --i) {
    for (int j = i + 1; j < D; ++j)
      b[i] -= at(i, j) * b[j];
    b[i] = b[i] / at(i, i);
  }
}

} // namespace

HankelEvaluation hankel_evaluate(const SeriesEvaluation& series, int D, int d) {
  const int digits = series.digits;
  HankelEvaluation out;
  out.D = D;
  out.d = d;
  out.digits_used = digits;

  std::vector<BigComplex> m = hankel_matrix(series, D, d);
  LuFactors lu = factorize(std::move(m), D, digits);
  out.condition_estimate = lu.growth_log10;
  out.exact_zero = lu.exact_zero;

  if (lu.exact_zero) {
    out.value = BigComplex(digits);
    out.dlog = BigComplex(digits);
    out.has_dlog = false;
    return out;
  }

  BigComplex det(1, digits);
  if (lu.sign < 0)
    det = -det;
  for (int k = 0; k < D; ++k)
    det = det * lu.lu[(size_t)k * D + k];
  out.value = det;

  // Jacobi: d/dE log det H = tr(H^-1 H'). Solve one system per column of
  // H' and accumulate the matching diagonal element.
  BigComplex trace(digits);
  std::vector<BigComplex> col(D, BigComplex(digits));
  for (int j = 0; j < D; ++j) {
    for (int i = 0; i < D; ++i) {
      int row = lu.perm[i] + 1; // original 1-based row index
      col[i] = series.df_dE[(size_t)(row + (j + 1) + d - 1)];
    }
    solve_inplace(lu, D, col);
    trace += col[j];
  }
  out.dlog = trace;
  out.has_dlog = true;
  return out;
}

double root_condition_residual(const SeriesEvaluation& series, int D, int d) {
  std::vector<BigComplex> m = hankel_matrix(series, D, d);
  const int digits = series.digits;

  // Product of row max-norms (log-accumulated to stay in range).
  double log_norms = 0.0;
  for (int i = 0; i < D; ++i) {
    BigReal row_max(digits);
    for (int j = 0; j < D; ++j) {
      BigReal n2 = m[(size_t)i * D + j].norm2();
      if (n2 > row_max)
        row_max = n2;
    }
    if (row_max.is_zero())
      return 0.0; // a vanishing row forces det = 0; defined as residual 0
    log_norms += 0.5 * row_max.log10_abs();
  }

  LuFactors lu = factorize(std::move(m), D, digits, /*tolerate_tiny=*/true);
  if (lu.exact_zero)
    return 0.0;
  double log_det = 0.0;
  for (int k = 0; k < D; ++k)
    log_det += 0.5 * lu.lu[(size_t)k * D + k].norm2().log10_abs();
  return std::pow(10.0, log_det - log_norms);
}

} // namespace siegert
