// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace siegert {

/// Base class for everything the solver can throw.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid argument or configuration.
class UsageError : public Error {
public:
  using Error::Error;
};

/// The precision policy cap was reached and more digits were requested.
class PrecisionExhausted : public Error {
public:
  using Error::Error;
};

/// A pivot fell below the working-precision floor; the matrix cannot be
/// distinguished from a singular one at the current number of digits.
class SingularToPrecision : public Error {
public:
  SingularToPrecision(const std::string& what, int digits)
      : Error(what), digits(digits) {}
  int digits;
};

/// Newton ran out of iterations at the precision cap.
class NoConvergence : public Error {
public:
  using Error::Error;
};

/// The Taylor series is too short for the requested determinant dimension.
class InsufficientOrder : public Error {
public:
  using Error::Error;
};

/// The logarithmic derivative blew up mid-integration (node of the
/// wavefunction on the integration path).
class PoleEncountered : public Error {
public:
  using Error::Error;
};

/// A diagnostic needs more recorded dimensions than the trace has.
class TooShort : public Error {
public:
  using Error::Error;
};

} // namespace siegert
