#pragma once

#include <stdexcept>
#include <string>

namespace lsqsub {

/// Raised when a computation is well-posed in its arguments but fails
/// numerically: singular systems, nonzero division remainders, degenerate
/// eigenspaces. Argument errors use std::invalid_argument.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lsqsub
