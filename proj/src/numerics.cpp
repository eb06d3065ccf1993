// SPDX-License-Identifier: Apache-2.0
#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

namespace siegert {

void PrecisionPolicy::validate() const {
  if (base_digits < 16)
    throw UsageError("precision policy: base_digits must be at least 16");
  if (digits_per_dimension < 0)
    throw UsageError("precision policy: digits_per_dimension must be nonnegative");
  if (max_digits < base_digits)
    throw UsageError("precision policy: max_digits must be at least base_digits");
  if (escalation_den == 0 || escalation_num <= escalation_den)
    throw UsageError("precision policy: escalation factor must exceed 1");
}

int PrecisionPolicy::working_digits(int dimension) const {
  if (dimension < 1)
    throw UsageError("working_digits: dimension must be positive");
  long wanted = std::max<long>(base_digits, (long)digits_per_dimension * dimension);
  return (int)std::min<long>(max_digits, wanted);
}

int PrecisionPolicy::escalate(int current) const {
  if (current > max_digits)
    throw UsageError("escalate: current precision exceeds the cap");
  if (current == max_digits)
    throw PrecisionExhausted("precision cap of " + std::to_string(max_digits) +
                             " digits reached");
  // ceil(current * num / den) in integer arithmetic
  long next = ((long)current * escalation_num + escalation_den - 1) / escalation_den;
  return (int)std::min<long>(max_digits, next);
}

mpfr_prec_t bits_for_digits(int digits) {
  if (digits < 1)
    throw UsageError("precision must be at least one digit");
  // log2(10) = 3.3219...; two guard bits so that a digits-long decimal
  // string round-trips through the binary value exactly.
  return (mpfr_prec_t)std::ceil(digits * 3.32192809488736234787) + 2;
}

BigReal::BigReal(int digits) : digits_(digits) {
  mpfr_init2(v_, bits_for_digits(digits));
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(long value, int digits) : digits_(digits) {
  mpfr_init2(v_, bits_for_digits(digits));
  mpfr_set_si(v_, value, MPFR_RNDN);
}

BigReal::BigReal(double value, int digits) : digits_(digits) {
  mpfr_init2(v_, bits_for_digits(digits));
  mpfr_set_d(v_, value, MPFR_RNDN);
}

BigReal::BigReal(const std::string& decimal, int digits) : digits_(digits) {
  mpfr_init2(v_, bits_for_digits(digits));
  const char* s = decimal.c_str();
  char* end = nullptr;
  mpfr_strtofr(v_, s, &end, 10, MPFR_RNDN);
  if (end == s || (end && *end != '\0')) {
    mpfr_clear(v_);
    throw UsageError("not a decimal number: '" + decimal + "'");
  }
}

BigReal BigReal::from_mpq(mpq_srcptr q, int digits) {
  BigReal r(digits);
  mpfr_set_q(r.v_, q, MPFR_RNDN);
  return r;
}

BigReal::BigReal(const BigReal& other) : digits_(other.digits_) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept : digits_(other.digits_) {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
    digits_ = other.digits_;
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this != &other) {
    mpfr_swap(v_, other.v_);
    digits_ = other.digits_;
  }
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::to_digits(int digits) const {
  BigReal r(digits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

namespace {
inline int join(const BigReal& a, const BigReal& b) {
  return std::max(a.digits(), b.digits());
}
} // namespace

BigReal BigReal::operator-() const {
  BigReal r(digits_);
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::operator+(const BigReal& rhs) const {
  BigReal r(join(*this, rhs));
  mpfr_add(r.v_, v_, rhs.v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::operator-(const BigReal& rhs) const {
  BigReal r(join(*this, rhs));
  mpfr_sub(r.v_, v_, rhs.v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::operator*(const BigReal& rhs) const {
  BigReal r(join(*this, rhs));
  mpfr_mul(r.v_, v_, rhs.v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::operator/(const BigReal& rhs) const {
  BigReal r(join(*this, rhs));
  mpfr_div(r.v_, v_, rhs.v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::operator*(long rhs) const {
  BigReal r(digits_);
  mpfr_mul_si(r.v_, v_, rhs, MPFR_RNDN);
  return r;
}

BigReal BigReal::operator/(long rhs) const {
  BigReal r(digits_);
  mpfr_div_si(r.v_, v_, rhs, MPFR_RNDN);
  return r;
}

BigReal& BigReal::operator+=(const BigReal& rhs) {
  mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs) {
  mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigReal BigReal::abs() const {
  BigReal r(digits_);
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::sqrt() const {
  BigReal r(digits_);
  mpfr_sqrt(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::exp() const {
  BigReal r(digits_);
  mpfr_exp(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::log() const {
  BigReal r(digits_);
  mpfr_log(r.v_, v_, MPFR_RNDN);
  return r;
}

double BigReal::log10_abs() const {
  if (is_zero())
    return -std::numeric_limits<double>::infinity();
  mpfr_t t;
  mpfr_init2(t, 64);
  mpfr_abs(t, v_, MPFR_RNDN);
  mpfr_log10(t, t, MPFR_RNDN);
  double out = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return out;
}

std::string BigReal::to_string() const {
  if (is_zero())
    return mpfr_signbit(v_) ? "-0" : "0";
  if (!is_finite())
    return mpfr_nan_p(v_) ? "nan" : (mpfr_sgn(v_) > 0 ? "inf" : "-inf");

  mpfr_exp_t e = 0;
  char* digits = mpfr_get_str(nullptr, &e, 10, (size_t)digits_, v_, MPFR_RNDN);
  std::string mant(digits);
  mpfr_free_str(digits);

  std::string sign;
  if (!mant.empty() && mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  // mpfr convention: value = 0.mant * 10^e, so the printed exponent
  // (one digit before the point) is e-1.
  long ex = (long)e - 1;
  std::string out = sign + mant.substr(0, 1);
  if (mant.size() > 1)
    out += "." + mant.substr(1);
  out += "e";
  out += (ex < 0 ? "-" : "+");
  std::string xs = std::to_string(ex < 0 ? -ex : ex);
  if (xs.size() < 2)
    xs = "0" + xs;
  return out + xs;
}

BigComplex::BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {
  if (re_.digits() != im_.digits()) {
    int d = std::max(re_.digits(), im_.digits());
    re_ = re_.to_digits(d);
    im_ = im_.to_digits(d);
  }
}

BigComplex BigComplex::operator*(const BigComplex& rhs) const {
  BigReal re = re_ * rhs.re_ - im_ * rhs.im_;
  BigReal im = re_ * rhs.im_ + im_ * rhs.re_;
  return {std::move(re), std::move(im)};
}

BigComplex BigComplex::operator/(const BigComplex& rhs) const {
  // Plain formula: the exponent range of mpfr makes the usual
  // overflow-avoiding rearrangements unnecessary.
  BigReal den = rhs.re_ * rhs.re_ + rhs.im_ * rhs.im_;
  BigReal re = (re_ * rhs.re_ + im_ * rhs.im_) / den;
  BigReal im = (im_ * rhs.re_ - re_ * rhs.im_) / den;
  return {std::move(re), std::move(im)};
}

BigComplex& BigComplex::operator+=(const BigComplex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

BigReal BigComplex::abs() const {
  BigReal r(digits());
  mpfr_hypot(r.raw(), re_.raw(), im_.raw(), MPFR_RNDN);
  return r;
}

BigReal BigComplex::norm2() const { return re_ * re_ + im_ * im_; }

BigComplex BigComplex::sqrt() const {
  if (is_zero())
    return BigComplex(digits());
  BigReal mag = abs();
  if (!re_.is_negative()) {
    BigReal w = ((mag + re_) / 2).sqrt();
    BigReal v = (im_ / 2) / w;
    return {std::move(w), std::move(v)};
  }
  // re < 0: the larger component is imaginary; branch cut gives Im >= 0
  // for nonnegative im.
  BigReal u = ((mag - re_) / 2).sqrt();
  BigReal re = (im_.abs() / 2) / u;
  BigReal im = im_.is_negative() ? -u : u;
  return {std::move(re), std::move(im)};
}

BigComplex BigComplex::exp() const {
  BigReal scale = re_.exp();
  BigReal c(digits()), s(digits());
  mpfr_sin_cos(s.raw(), c.raw(), im_.raw(), MPFR_RNDN);
  return {scale * c, scale * s};
}

BigComplex BigComplex::log() const {
  BigReal re = abs().log();
  BigReal im(digits());
  mpfr_atan2(im.raw(), im_.raw(), re_.raw(), MPFR_RNDN);
  return {std::move(re), std::move(im)};
}

std::string BigComplex::to_string() const {
  return "(" + re_.to_string() + ", " + im_.to_string() + ")";
}

} // namespace siegert
