#pragma once

#include <stdexcept>
#include <string>

namespace funtf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument shape or range (dimension mismatch, k out of range, N <= d+1, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not produce a trustworthy result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An eigenvalue that a circle action needs to be simple is not isolated.
class IsolationError : public NumericalError {
 public:
  IsolationError(int k, int j, double gap)
      : NumericalError("eigenvalue mu_{" + std::to_string(k) + "," + std::to_string(j) +
                       "} is not isolated (gap " + std::to_string(gap) + ")"),
        k_(k),
        j_(j),
        gap_(gap) {}

  int k() const noexcept { return k_; }
  int j() const noexcept { return j_; }
  double gap() const noexcept { return gap_; }

 private:
  int k_;
  int j_;
  double gap_;
};

/// Rejection sampling ran out of trials.
class SamplingError : public Error {
 public:
  using Error::Error;
};

}  // namespace funtf
