#pragma once

#include <stdexcept>
#include <string>

namespace primorials {

/// Precondition violated by the caller (bad index, range, base, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Work or memory budget exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// next_prime_above ran out of odd steps.
class SearchCapExceeded : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

}  // namespace primorials
