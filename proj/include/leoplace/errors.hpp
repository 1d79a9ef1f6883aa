#pragma once

#include <stdexcept>
#include <string>

namespace leoplace {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Requested a link that the shell geometry does not have (fewer than two
// planes, or fewer than two satellites per plane).
class NoSuchLink : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Instance exceeds what an exhaustive routine is willing to enumerate.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace leoplace
