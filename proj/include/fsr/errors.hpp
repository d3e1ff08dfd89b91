#pragma once

#include <stdexcept>
#include <string>

namespace fsr {

// Thrown when an operation would exceed a configured enumeration or size
// bound. Distinct from invalid_argument (malformed input) and domain_error
// (value outside the mathematical domain): the request is well formed but
// too large for exhaustive treatment.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fsr
