#pragma once

#include <stdexcept>

namespace mfwr {

// invalid input (parameter out of the supported domain)
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// a solver or certified bound failed to reach its target accuracy
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// quantity undefined exactly at the critical point
struct CriticalPointError : DomainError {
  using DomainError::DomainError;
};

// two-sided quantity requested without a side on the coexistence line
struct AmbiguityError : DomainError {
  using DomainError::DomainError;
};

}  // namespace mfwr
