#pragma once

#include <stdexcept>
#include <string>

namespace cantordiff {

// Malformed text input (scalars, field declarations, config files).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A caller-supplied argument violates an operation's precondition.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MixedFieldError : PreconditionError {
  using PreconditionError::PreconditionError;
};

struct DivisionByZero : PreconditionError {
  using PreconditionError::PreconditionError;
};

// A configurable work limit (depth, word count, state count) was hit.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Something that must hold by construction did not.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace cantordiff
