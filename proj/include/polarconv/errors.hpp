#pragma once

#include <stdexcept>
#include <string>

namespace polarconv {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed configuration: bad keys, missing seed, probe strategy without the
// context it needs, probe equal to the candidate, and similar user mistakes.
struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// A point representation does not fit the space it is used with
// (wrong variant, wrong dimension, non-finite entries).
struct RepresentationError : Error {
  explicit RepresentationError(const std::string& what) : Error(what) {}
};

// Mathematically invalid request: empty point set, unbounded oracle where a
// bounded one is required, nesting violations, out-of-range parameters.
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(what) {}
};

// The horizon (or a subsequence) is too short to say anything.
struct InsufficientDataError : Error {
  explicit InsufficientDataError(const std::string& what) : Error(what) {}
};

// Exact rational arithmetic left the representable range.
struct OverflowError : Error {
  explicit OverflowError(const std::string& what) : Error(what) {}
};

} // namespace polarconv
