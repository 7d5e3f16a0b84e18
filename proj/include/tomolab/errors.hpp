#pragma once

#include <stdexcept>
#include <string>

namespace tomolab {

// Thrown when a measurement or state fails to build or verify
// (non-IC POM, fiducial condition violated, bad input file, ...).
// The CLI maps this to exit code 3.
class construction_error : public std::runtime_error {
 public:
  explicit construction_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a computation degenerates (singular solve, probability
// below the clipping floor, ...). The CLI maps this to exit code 4.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tomolab
