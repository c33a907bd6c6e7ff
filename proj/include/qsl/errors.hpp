#pragma once

#include <stdexcept>
#include <string>

namespace qsl {

// Bad inputs: dimension mismatches, invalid probabilities, malformed configs.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A structural precondition of an analytic result does not hold for the given
// circuit (e.g. a non-Clifford fixed gate where the trig-form lemma needs one).
struct HypothesisError : std::runtime_error {
  explicit HypothesisError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qsl
