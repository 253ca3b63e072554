#pragma once

#include <stdexcept>
#include <string>

namespace ac {

// Numerical failures that a caller may want to handle (eigeniteration,
// indeterminate kernel classification, ...). Precondition violations use
// std::invalid_argument throughout.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by the spectrum assembly when the zero-classification policy
// cannot separate approximate kernel elements from small nonzero
// eigenvalues (ratio test fails).
struct IndeterminateNullity : NumericalError {
  using NumericalError::NumericalError;
};

// Bad run configuration (unknown keys, schema violations).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ac
