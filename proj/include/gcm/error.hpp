#pragma once

#include <stdexcept>
#include <string>

namespace gcm {

/// Invalid arguments or malformed input data: bad indices, mismatched
/// domains, unparsable files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A math-level precondition does not hold (positivity, size guards,
/// Markov membership of an input function).
class MathError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PositivityError : public MathError {
 public:
  using MathError::MathError;
};

class GuardExceeded : public MathError {
 public:
  using MathError::MathError;
};

class MembershipError : public MathError {
 public:
  using MathError::MathError;
};

/// Two routes that must agree by theory did not. Always a bug or a
/// numerically degenerate input.
class InconsistencyError : public MathError {
 public:
  using MathError::MathError;
};

}  // namespace gcm
