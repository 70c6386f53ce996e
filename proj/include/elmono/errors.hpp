#pragma once

#include <stdexcept>
#include <string>

namespace elmono {

// Invalid argument or violated precondition (bad Lame constants, odd node
// count, dimension mismatch, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the domain of a special function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Kernel evaluated on its diagonal (x == y).
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or inconsistent data (file contents, degenerate operators).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure could not produce a trustworthy answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// omega^2 is (numerically) a Dirichlet eigenvalue of the obstacle, so the
// single-layer system is too ill-conditioned to solve.
class InteriorEigenvalueError : public NumericalError {
 public:
  InteriorEigenvalueError(const std::string& what, double condition)
      : NumericalError(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

}  // namespace elmono
