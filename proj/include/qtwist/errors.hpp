#pragma once

#include <stdexcept>
#include <string>

namespace qtwist {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (k > n, wrong side tag, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exact division was requested but the dividend is not a multiple of the divisor.
class NotDivisible : public Error {
 public:
  NotDivisible(const std::string& what, std::string witness)
      : Error(what + " (witness: " + witness + ")"), witness_(std::move(witness)) {}

  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

/// A structure constant that must be a polynomial in q failed to be one.
class IntegralityError : public Error {
 public:
  using Error::Error;
};

/// A fraction that must lie in Z[q]_(p,q-1) has a non-unit denominator.
class MembershipError : public Error {
 public:
  using Error::Error;
};

/// A divided-power index exceeded the configured cap.
class DegreeCapError : public Error {
 public:
  using Error::Error;
};

/// A finite enumeration would exceed its resource cap.
class ResourceCapError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtwist
