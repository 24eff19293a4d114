#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lue {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed interval, size, or descriptor.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A refinement sequence failed to settle within its budget.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonFiniteIntegrand : public std::runtime_error {
 public:
  NonFiniteIntegrand(std::size_t i, std::size_t j, double x, double y)
      : std::runtime_error("non-finite integrand at node pair (" + std::to_string(i) + ", " +
                           std::to_string(j) + "), x=" + std::to_string(x) +
                           ", y=" + std::to_string(y)),
        i_(i),
        j_(j) {}

  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }

 private:
  std::size_t i_;
  std::size_t j_;
};

}  // namespace lue
