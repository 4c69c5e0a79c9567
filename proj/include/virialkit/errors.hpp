#pragma once

#include <stdexcept>
#include <string>

namespace virialkit {

// Caller broke a precondition: bad argument, mismatched truncation, missing entry.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Mathematical domain violated: zero constant term, point outside a polydisk.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// An internal structural invariant failed. Always a bug.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace virialkit
