#pragma once

// Exception types shared by every module. All derive from szego::Error so a
// caller can catch numerical failures in one place (the CLI maps them to exit
// code 2).

#include <stdexcept>
#include <string>

namespace szego {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A negative-order Pochhammer symbol has a vanishing denominator factor.
class DivisionByZeroFactor : public Error {
 public:
  using Error::Error;
};

/// An infinite product was requested with |q| >= 1.
class DivergentProduct : public Error {
 public:
  using Error::Error;
};

/// A bilateral series was evaluated outside its open convergence region.
class ConvergenceRegionViolated : public Error {
 public:
  using Error::Error;
};

/// A denominator factor came within the pole tolerance of zero.
class PoleHit : public Error {
 public:
  using Error::Error;
};

/// A point or domain parameter lies outside the admissible region.
class DomainViolation : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace szego
