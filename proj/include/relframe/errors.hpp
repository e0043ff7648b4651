#pragma once

#include <stdexcept>
#include <string>

namespace relframe {

// Bad argument: out-of-range angle, non-finite value, malformed state.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A scan or optimisation request that cannot be honoured as configured.
class InvalidConfiguration : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Arithmetic left its domain (e.g. KL term with zero reference density).
class NumericalDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Conditioning on an outcome whose marginal probability vanishes.
class ImpossibleOutcome : public NumericalDomainError {
 public:
  using NumericalDomainError::NumericalDomainError;
};

}  // namespace relframe
