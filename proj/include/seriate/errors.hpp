#pragma once

#include <stdexcept>
#include <string>

namespace seriate {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fiedler value numerically zero: the similarity graph has more than one
// connected component and no linear order can be recovered.
struct DisconnectedGraphError : Error {
  using Error::Error;
};

// An iterative routine hit its iteration cap before reaching tolerance.
struct ConvergenceError : Error {
  using Error::Error;
};

// A constraint column is numerically zero, so its dual coordinate has no
// curvature and the projection cannot make progress on it.
struct RankDeficientError : Error {
  using Error::Error;
};

// Requested regularization exceeds the convexity bound.
struct InfeasibleMuError : Error {
  using Error::Error;
};

}  // namespace seriate
