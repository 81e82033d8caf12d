#pragma once

#include <stdexcept>
#include <string>

namespace sicmap {

// Query points that coincide with a station, unbounded domains and similar
// evaluation-time problems.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or invalid input data (network files, locator files, subsets).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An algorithm was called outside its parameter regime (beta <= 1, N = 0, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Station placement violates general position for arrangement construction.
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sicmap
