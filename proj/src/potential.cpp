// SPDX-License-Identifier: Apache-2.0
#include "potential.hpp"

#include <cctype>

namespace siegert {

PotentialModel::PotentialModel(mpq_class coulomb_strength, mpq_class well_depth)
    : Z_(std::move(coulomb_strength)), V0_(std::move(well_depth)) {}

void PotentialModel::extend_locked(unsigned j) const {
  while (memo_.size() <= j) {
    unsigned n = (unsigned)memo_.size();
    if (n < 2 || V0_ == 0) {
      memo_.emplace_back(0);
      continue;
    }
    // v_n = V0 * (-1)^n / (n-2)!; extend incrementally from v_{n-1}.
    if (n == 2) {
      memo_.emplace_back(V0_);
    } else {
      mpq_class v = memo_[n - 1] / (long)(n - 2);
      memo_.emplace_back(-v);
    }
  }
}

mpq_class PotentialModel::coefficient(unsigned j) const {
  std::lock_guard<std::mutex> lock(mu_);
  extend_locked(j);
  return memo_[j];
}

BigReal PotentialModel::coefficient_real(unsigned j, int digits) const {
  std::lock_guard<std::mutex> lock(mu_);
  extend_locked(j);
  auto& level = real_memo_[digits];
  while (level.size() <= j) {
    const mpq_class& q = memo_[level.size()];
    level.push_back(BigReal::from_mpq(q.get_mpq_t(), digits));
  }
  return level[j];
}

BigReal PotentialModel::coulomb_real(int digits) const {
  return BigReal::from_mpq(Z_.get_mpq_t(), digits);
}

PotentialModel make_paper_potential(const mpq_class& V0, const mpq_class& Z) {
  return PotentialModel(Z, V0);
}

mpq_class decimal_to_mpq(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace((unsigned char)c))
      s += c;
  if (s.empty())
    throw UsageError("empty decimal string");

  bool neg = false;
  size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    ++i;
  }
  std::string intpart, fracpart;
  while (i < s.size() && std::isdigit((unsigned char)s[i]))
    intpart += s[i++];
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit((unsigned char)s[i]))
      fracpart += s[i++];
  }
  long expo = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      eneg = s[i] == '-';
      ++i;
    }
    if (i >= s.size())
      throw UsageError("malformed exponent in '" + text + "'");
    long ev = 0;
    while (i < s.size() && std::isdigit((unsigned char)s[i]))
      ev = ev * 10 + (s[i++] - '0');
    expo = eneg ? -ev : ev;
  }
  if (i != s.size() || (intpart.empty() && fracpart.empty()))
    throw UsageError("not a decimal number: '" + text + "'");

  mpz_class mantissa((intpart + fracpart).empty() ? "0" : intpart + fracpart);
  long shift = expo - (long)fracpart.size();
  mpq_class q(mantissa);
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, (unsigned long)(shift < 0 ? -shift : shift));
  if (shift >= 0)
    q *= mpq_class(pow10);
  else
    q /= mpq_class(pow10);
  q.canonicalize();
  if (neg)
    q = -q;
  return q;
}

} // namespace siegert
