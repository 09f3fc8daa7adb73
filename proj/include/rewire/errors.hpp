#pragma once

#include <stdexcept>
#include <string>

namespace rewire {

// Semantic precondition failures: "not non-negative", "unbalanced input",
// "internal defects present", "non-wellfounded grading", ...
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an enumeration would materialize more nodes than the
// configured ceiling allows.
struct ResourceCeiling : std::runtime_error {
  explicit ResourceCeiling(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rewire
