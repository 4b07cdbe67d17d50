#pragma once

#include <stdexcept>
#include <string>

namespace ssflip {

// An exhaustive oracle or check would exceed its enumeration budget.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Random graph generation exhausted its resampling attempts.
struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A guarantee-backed operation was invoked outside its hypotheses.
struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ssflip
