// errors.hpp: exception types shared by all epot modules

#pragma once

#include <stdexcept>
#include <string>

namespace epot {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument or violated precondition (negative time, p outside [0,1], empty grid, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The requested Fock cutoff leaves too much probability in the top levels.
class CutoffError : public Error {
 public:
  CutoffError(int cutoff, double tail_mass);
  int cutoff() const noexcept { return cutoff_; }
  double tail_mass() const noexcept { return tail_mass_; }

 private:
  int cutoff_;
  double tail_mass_;
};

// A superposition that cancels to the null vector (e.g. odd cat at alpha = 0).
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

// Eigensolver failure, non-finite intermediate, or an integrator step count that is too coarse.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A two-mode matrix would exceed the configured memory budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A cubic has no (or no unique) negative root for the given coefficients.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An asymptotic law was requested outside its validity window.
class WindowError : public Error {
 public:
  WindowError(const std::string& what, double lo, double hi);
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

// The two-qubit concurrence was requested on a state that leaks out of {|0>,|1>} x {|0>,|1>}.
class SubspaceViolation : public Error {
 public:
  using Error::Error;
};

// Beam-splitter reduction and loss evolution disagree: always an implementation bug.
class IdentityViolation : public Error {
 public:
  using Error::Error;
};

// A decay fit window has fewer than the required samples above the noise floor.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

// The trigonometric closed form jumped between cubic-root branches.
class BranchError : public Error {
 public:
  using Error::Error;
};

// A state family has no squeezing boundary for the given parameters (mixed states with p <= 1/2).
class NoBoundaryError : public Error {
 public:
  using Error::Error;
};

}  // namespace epot
