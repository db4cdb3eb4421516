#pragma once

#include <stdexcept>
#include <string>

namespace glpm {

/// Bad user input: malformed files, inconsistent configuration, out-of-range
/// parameters. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure during a run: factorization breakdown, non-finite state.
/// Maps to CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace glpm
