#pragma once

#include <stdexcept>
#include <string>

namespace costsearch {

/// Malformed or inconsistent input: bad vertex ids, invalid files, bad cost specs.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A cost model was used on a topology it is not defined for
/// (position-dependent models on a non-path tree).
class ModelMismatchError : public InputError {
 public:
  using InputError::InputError;
};

/// An instance exceeds a configured solver or oracle limit.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact integer arithmetic left the representable range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace costsearch
