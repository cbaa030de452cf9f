#pragma once

#include <stdexcept>
#include <string>

namespace mmbi {

/// An MDP failed validate_mdp() where a valid one was required.
class InvalidMdp : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A problem instance is too large for an exhaustive routine.
class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mmbi
