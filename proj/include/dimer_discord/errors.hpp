#pragma once

#include <stdexcept>
#include <string>

namespace dimer {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of a formula (negative temperature,
/// correlator outside [-1, 1/3], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Derived quantity is physically inconsistent, usually a units or
/// normalization mistake in the input.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// Equation has no solution for the requested input (e.g. c_m above the
/// Schottky maximum).
class NoSolutionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unusable measurement data.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace dimer
