#pragma once

#include <stdexcept>
#include <string>

namespace giantwalk {

// Domain violations (bad lambda, out-of-range sizes, invalid probabilities)
// map to CLI exit code 2; I/O failures map to exit code 3.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace giantwalk
