#pragma once

#include <stdexcept>
#include <string>

namespace qolct {

// Bad caller input: malformed parameters, nonpositive b, out-of-range alpha.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical precondition of a plan is violated (Nyquist, chirp resolution,
// grid too small, interpolation outside the sampled domain).
class PreconditionViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qolct
