#pragma once

#include <stdexcept>
#include <string>

namespace rooftune {

// Invalid argument or configuration value.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Variance/CI requested on fewer than two observations.
class UndefinedVarianceError : public std::domain_error {
 public:
  UndefinedVarianceError()
      : std::domain_error("variance is undefined for fewer than 2 observations") {}
};

// Division by zero in a ratio (zero traffic, zero mean).
class DivisionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A kernel or backend failed while running.
class KernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Allocation of benchmark buffers failed.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested backend/platform feature is not available in this build.
class EnvironmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input files are inconsistent with each other (archives, specs).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rooftune
