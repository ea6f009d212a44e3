#pragma once

#include <stdexcept>
#include <string>

namespace bullwhip {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: non-finite numbers, empty series, out-of-range knobs.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// Well-formed input outside the supported parameter domain, e.g. a
// non-stationary or non-invertible model, shared characteristic roots,
// or a vanishing denominator. Messages name the violated condition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A certified series truncation could not reach the requested tolerance
// within the term budget. Carries the best bound that was achieved.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double achieved)
      : Error(what), achieved_tail(achieved) {}
  double achieved_tail;
};

// Parameter constellations a closed form deliberately refuses, such as
// repeated characteristic roots.
class UnsupportedCaseError : public Error {
 public:
  using Error::Error;
};

// Inputs that collapse the statistic being estimated (zero demand variance).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace bullwhip
