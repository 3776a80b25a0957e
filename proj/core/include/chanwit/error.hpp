#pragma once

#include <stdexcept>
#include <string>

namespace chanwit {

/// Input violates a documented precondition or type invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter outside the admissible range of a constructor or formula.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Request is well-formed but outside what a closed form covers.
class ScopeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exhaustive enumeration would exceed its configured budget.
class BudgetError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// An iterative kernel failed to converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chanwit
