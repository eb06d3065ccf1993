// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "numerics.hpp"

namespace siegert {

/// Central-field potential V(r) = Z/r + V0 * r^2 * exp(-r), stored as the
/// Coulomb strength plus the Taylor coefficients v_j of the regular part:
///
///   v_0 = v_1 = 0,   v_j = V0 * (-1)^j / (j-2)!   for j >= 2.
///
/// The Coulomb term is kept separate because it enters the Riccati
/// recurrence only through the closure of the leading coefficient.
/// Coefficients are exact rationals, generated lazily and memoized;
/// conversions to a given working precision are cached per digits level.
/// Read-only after construction, safe for concurrent use.
class PotentialModel {
public:
  PotentialModel(mpq_class coulomb_strength, mpq_class well_depth);

  const mpq_class& Z() const { return Z_; }
  const mpq_class& V0() const { return V0_; }

  /// Exact Taylor coefficient v_j of the regular part.
  mpq_class coefficient(unsigned j) const;

  /// v_j correctly rounded at `digits` decimal digits (cached).
  BigReal coefficient_real(unsigned j, int digits) const;

  /// Z at `digits` decimal digits.
  BigReal coulomb_real(int digits) const;

private:
  mpq_class Z_;
  mpq_class V0_;
  mutable std::mutex mu_;
  mutable std::vector<mpq_class> memo_;                  // v_0..v_{memo-1}
  mutable std::map<int, std::vector<BigReal>> real_memo_; // per digits level

  void extend_locked(unsigned j) const;
};

/// Model with the stated Coulomb strength and the exponential-well Taylor
/// coefficients above.
PotentialModel make_paper_potential(const mpq_class& V0, const mpq_class& Z);

/// Exact rational from a plain decimal string ("7.5", "-1", "4e-2").
/// Throws UsageError on malformed input.
mpq_class decimal_to_mpq(const std::string& text);

} // namespace siegert
