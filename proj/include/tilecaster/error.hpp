#pragma once

#include <stdexcept>
#include <string>

namespace tilecaster {

// Raised when a caller breaks an operation's precondition (out-of-range
// tile, stepping a finished episode, ...). Distinct from bad user input,
// which surfaces as std::invalid_argument or a parse diagnostic.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace tilecaster
