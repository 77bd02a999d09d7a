#pragma once

#include <stdexcept>
#include <string>

namespace ssde {

/// An argument lies outside the domain of a numerical routine.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A model parameter violates its admissible range. The message names the
/// violated constraint, e.g. "alpha must lie in (1,2)".
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// The requested operation has no meaning in the current parameter regime
/// (for example a class-S construction below the lower threshold).
class RegimeError : public std::runtime_error {
 public:
  explicit RegimeError(const std::string& what) : std::runtime_error(what) {}
};

/// A time-change inversion asked for a clock value beyond the simulated range.
class HorizonExhausted : public std::out_of_range {
 public:
  explicit HorizonExhausted(const std::string& what) : std::out_of_range(what) {}
};

}  // namespace ssde
