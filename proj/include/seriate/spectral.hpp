#pragma once

#include "seriate/core.hpp"

namespace seriate {

enum class FiedlerMethod { automatic, dense, iterative };

struct FiedlerResult {
  double value = 0.0;   // second-smallest Laplacian eigenvalue
  Vector vector;        // unit norm, orthogonal to the all-ones vector
  bool multiplicity_warning = false;
  FiedlerMethod method = FiedlerMethod::dense;
};

struct FiedlerOptions {
  FiedlerMethod method = FiedlerMethod::automatic;
  int dense_threshold = 2000;  // automatic mode: dense up to this size
  int max_iterations = 10000;  // Lanczos matrix-vector product cap
  double tolerance = 1e-10;    // eigenpair residual target (relative to ||L||)
  double disconnect_tolerance = 1e-10;
};

// Minimizer of y'L_A y over unit vectors orthogonal to 1. The iterative path
// runs Lanczos on shift*I - L with the all-ones direction deflated, so it
// extracts the second-largest eigenvector of the shifted operator.
// Throws DisconnectedGraphError when the Fiedler value is numerically zero
// and ConvergenceError when the iterative path exhausts its budget.
FiedlerResult fiedler(const SimilarityMatrix& a, const FiedlerOptions& opts = {});

// Ordering that sorts the Fiedler vector ascending; ties keep index order.
// The vector's sign is normalized (first nonzero coordinate negative) first,
// so the output is deterministic. multiplicity_warning is set on the result
// when the sorted vector has repeated values.
struct SpectralOrder {
  Permutation order;
  FiedlerResult fiedler;
};

SpectralOrder spectral_order(const SimilarityMatrix& a, const FiedlerOptions& opts = {});

}  // namespace seriate
