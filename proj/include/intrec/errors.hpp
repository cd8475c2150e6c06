#pragma once

#include <stdexcept>
#include <string>

namespace intrec {

// Argument outside the mathematical domain of an operation (negative time, bad length, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// An object violates the invariants of its class (e.g. a non-concave modulus).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Two random variables or a process and a random variable do not share an atom partition.
class PartitionError : public std::invalid_argument {
 public:
  explicit PartitionError(const std::string& what) : std::invalid_argument(what) {}
};

// A measurement schedule does not fit into the observation window.
class FeasibilityError : public std::domain_error {
 public:
  explicit FeasibilityError(const std::string& what) : std::domain_error(what) {}
};

// Malformed textual input (CLI spec strings, CSV files).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace intrec
