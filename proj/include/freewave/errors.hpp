#pragma once

#include <stdexcept>
#include <string>

namespace freewave {

// Argument outside the half-period window |omega t| < pi/2, or otherwise
// outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical precondition on input data was violated (degenerate grid,
// field not normalized, data not decayed at the boundary, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PeakDetectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace freewave
