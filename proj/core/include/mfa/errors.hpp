#pragma once

#include <stdexcept>
#include <string>

namespace mfa {

// Bad input data or configuration: wrong schema, out-of-range values,
// violated preconditions. CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Numerically degenerate situation that cannot produce a meaningful
// result (zero scatter, rank-0 configuration, NaN in a feature series).
// CLI maps this to exit code 3.
class DegeneracyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace mfa
