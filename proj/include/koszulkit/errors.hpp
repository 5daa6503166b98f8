#pragma once

#include <stdexcept>
#include <string>

namespace koszulkit {

// Malformed or inconsistent user input (mixed rings, non-chain maps, bad files).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The point lies outside the support of the module in question.
class NotInSupportError : public InputError {
 public:
  using InputError::InputError;
};

// A computation could not reach a verdict within its probing budget
// (Hilbert-Samuel tail too short, sop search exhausted, ...).
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two independent routes disagreed, or a proven implication failed.
// These always indicate an engine defect and are never swallowed.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace koszulkit
