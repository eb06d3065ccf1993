// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <string>
#include <utility>

#include "errors.hpp"

namespace siegert {

/// Decimal-digit working precision and the escalation rule used when
/// determinant cancellation eats into the available accuracy.
///
/// All precision in the public interface is denominated in decimal digits;
/// the binary precision behind a request for p digits is
/// ceil(p*log2(10)) + 2 bits, enough that a p-digit decimal string parses
/// and re-serializes to itself.
struct PrecisionPolicy {
  int base_digits = 40;
  int digits_per_dimension = 8;
  unsigned escalation_num = 2; ///< escalation factor as a rational num/den
  unsigned escalation_den = 1;
  int max_digits = 2000;

  /// Throws UsageError if the fields are inconsistent.
  void validate() const;

  /// Working digits at Hankel dimension D:
  /// min(max_digits, max(base_digits, digits_per_dimension*D)).
  int working_digits(int dimension) const;

  /// Next precision level: min(max_digits, ceil(current*factor)).
  /// Throws PrecisionExhausted when current is already at the cap.
  int escalate(int current) const;
};

/// Binary precision backing `digits` decimal digits.
mpfr_prec_t bits_for_digits(int digits);

/// Arbitrary-precision real number. Immutable value semantics; every
/// operation is correctly rounded (round-to-nearest) at the precision of
/// its result, which is the larger of the operands' precisions.
class BigReal {
public:
  BigReal() : BigReal(16) {}
  explicit BigReal(int digits);
  BigReal(long value, int digits);
  BigReal(int value, int digits) : BigReal((long)value, digits) {}
  BigReal(double value, int digits);

  /// Parses a decimal string ("-1.25", "4.78e-5", ...) at `digits` digits.
  /// Throws UsageError on malformed input.
  BigReal(const std::string& decimal, int digits);

  /// Exact rational -> correctly rounded value at `digits` digits.
  static BigReal from_mpq(mpq_srcptr q, int digits);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  int digits() const { return digits_; }
  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  /// Same value re-rounded to a different precision.
  BigReal to_digits(int digits) const;

  BigReal operator-() const;
  BigReal operator+(const BigReal& rhs) const;
  BigReal operator-(const BigReal& rhs) const;
  BigReal operator*(const BigReal& rhs) const;
  BigReal operator/(const BigReal& rhs) const;
  BigReal operator*(long rhs) const;
  BigReal operator/(long rhs) const;
  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);

  bool operator==(const BigReal& rhs) const { return mpfr_equal_p(v_, rhs.v_) != 0; }
  bool operator!=(const BigReal& rhs) const { return !(*this == rhs); }
  bool operator<(const BigReal& rhs) const { return mpfr_less_p(v_, rhs.v_) != 0; }
  bool operator<=(const BigReal& rhs) const { return mpfr_lessequal_p(v_, rhs.v_) != 0; }
  bool operator>(const BigReal& rhs) const { return mpfr_greater_p(v_, rhs.v_) != 0; }
  bool operator>=(const BigReal& rhs) const { return mpfr_greaterequal_p(v_, rhs.v_) != 0; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_negative() const { return mpfr_sgn(v_) < 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  BigReal abs() const;
  BigReal sqrt() const; ///< nonnegative input only
  BigReal exp() const;
  BigReal log() const;

  /// log10 of |x| as a hardware double (the mpfr exponent range is wide
  /// enough that this never under/overflows for nonzero x).
  double log10_abs() const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Canonical decimal serialization with exactly digits() significant
  /// figures: sign, one integer digit, '.', fraction, 'e' and a signed
  /// exponent. Zero serializes as "0".
  std::string to_string() const;

private:
  mpfr_t v_;
  int digits_;
  friend class BigComplex;
};

/// Arbitrary-precision complex number over two BigReal components held at
/// a common precision.
class BigComplex {
public:
  BigComplex() : BigComplex(16) {}
  explicit BigComplex(int digits) : re_(digits), im_(digits) {}
  BigComplex(BigReal re, BigReal im);
  BigComplex(long re, int digits) : re_(re, digits), im_(digits) {}
  BigComplex(const std::string& re, const std::string& im, int digits)
      : re_(re, digits), im_(im, digits) {}

  static BigComplex from_doubles(double re, double im, int digits) {
    return {BigReal(re, digits), BigReal(im, digits)};
  }

  const BigReal& re() const { return re_; }
  const BigReal& im() const { return im_; }
  int digits() const { return re_.digits_; }

  BigComplex to_digits(int digits) const {
    return {re_.to_digits(digits), im_.to_digits(digits)};
  }

  BigComplex operator-() const { return {-re_, -im_}; }
  BigComplex conj() const { return {re_, -im_}; }

  BigComplex operator+(const BigComplex& rhs) const { return {re_ + rhs.re_, im_ + rhs.im_}; }
  BigComplex operator-(const BigComplex& rhs) const { return {re_ - rhs.re_, im_ - rhs.im_}; }
  BigComplex operator*(const BigComplex& rhs) const;
  BigComplex operator/(const BigComplex& rhs) const;
  BigComplex operator*(const BigReal& rhs) const { return {re_ * rhs, im_ * rhs}; }
  BigComplex operator*(long rhs) const { return {re_ * rhs, im_ * rhs}; }
  BigComplex operator/(long rhs) const { return {re_ / rhs, im_ / rhs}; }
  BigComplex& operator+=(const BigComplex& rhs);
  BigComplex& operator-=(const BigComplex& rhs);

  bool operator==(const BigComplex& rhs) const { return re_ == rhs.re_ && im_ == rhs.im_; }
  bool operator!=(const BigComplex& rhs) const { return !(*this == rhs); }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

  BigReal abs() const;
  BigReal norm2() const; ///< re^2 + im^2, cheaper than abs for comparisons
  BigComplex sqrt() const; ///< principal branch (Re >= 0; Im >= 0 on the cut)
  BigComplex exp() const;
  BigComplex log() const; ///< principal branch

  std::string to_string() const; ///< "(re, im)" for diagnostics

private:
  BigReal re_, im_;
};

} // namespace siegert
