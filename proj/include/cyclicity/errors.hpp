#pragma once

#include <stdexcept>
#include <string>

namespace cyclicity {

/// Malformed or dimensionally inconsistent input to a library call.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A presentation or lattice that describes an infinite group.
class NotFiniteError : public InputError {
 public:
  using InputError::InputError;
};

/// An assignment of images to generators that does not respect the relations.
class NotHomomorphismError : public InputError {
 public:
  using InputError::InputError;
};

/// Internal state no longer satisfies an invariant the algorithm relies on.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cyclicity
