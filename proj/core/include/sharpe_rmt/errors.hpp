#pragma once

#include <stdexcept>
#include <string>

namespace sharpe_rmt {

// Preconditions on shapes and arguments throw std::invalid_argument.
// The types below signal numerical degeneracy of otherwise valid input.

class SingularSystemError : public std::runtime_error {
 public:
  explicit SingularSystemError(const std::string& what) : std::runtime_error(what) {}
};

class DegenerateEstimateError : public std::runtime_error {
 public:
  explicit DegenerateEstimateError(const std::string& what) : std::runtime_error(what) {}
};

class ZeroVarianceError : public std::runtime_error {
 public:
  explicit ZeroVarianceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sharpe_rmt
