#pragma once

#include <stdexcept>
#include <string>

namespace hostmarket {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of a curve or accounting function
/// (negative price, negative quantity, listings beyond capacity).
class DomainError : public Error {
public:
  using Error::Error;
};

/// The root finder was handed an interval without a sign change.
class BracketError : public Error {
public:
  using Error::Error;
};

/// A function evaluation produced NaN or infinity where a finite value was required.
class NumericError : public Error {
public:
  using Error::Error;
};

/// The requested quantity is not defined for this curve family
/// (e.g. the gross-benefit integral diverges for elasticity in [-1, 0)).
class UnsupportedConfiguration : public Error {
public:
  using Error::Error;
};

/// Invalid model parameters, simulation config or scenario file contents.
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace hostmarket
