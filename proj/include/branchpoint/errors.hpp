#pragma once

#include <stdexcept>
#include <string>

namespace branchpoint {

// Parameter outside a documented precondition. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument on a branch cut or at a singular point of a holomorphic function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical procedure could not deliver a certified or converged result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace branchpoint
