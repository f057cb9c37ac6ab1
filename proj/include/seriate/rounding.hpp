#pragma once

#include <cstdint>
#include <vector>

#include "seriate/core.hpp"
#include "seriate/projection.hpp"

namespace seriate {

struct SinkhornOptions {
  int max_iters = 10000;
  double tol = 1e-8;
};

struct SinkhornResult {
  Matrix scaled;
  int iterations = 0;
  // Input had zero entries; scaling still converged because the zero pattern
  // has total support.
  bool positivity_warning = false;
  // ||Pi_k||_F after every full row+column pass.
  std::vector<double> frobenius_trace;

  DoublyStochasticMatrix matrix(double tol = 1e-7) const {
    return DoublyStochasticMatrix(scaled, tol);
  }
};

// Alternating row/column sum normalization until the worst sum deviates from
// one by at most tol. Throws std::invalid_argument on negative entries and
// ConvergenceError when a row or column is all zero or the cap is reached.
SinkhornResult sinkhorn(const Matrix& m, const SinkhornOptions& opts = {});

struct SampledPermutations {
  Permutation best;
  double objective = 0.0;                 // ordering objective of `best`
  std::vector<double> objective_trace;    // one entry per draw
};

// Rounds a doubly stochastic matrix to permutations: draw k strictly
// increasing random vectors v (sorted uniforms), argsort S*v (ties keep index
// order), keep the draw with the lowest ordering objective. Each candidate is
// also flipped, when needed, so that element 0 precedes element n-1, matching
// the solver's orientation convention. Deterministic given the seed, and the
// draw stream does not depend on k, so growing k never worsens the best.
SampledPermutations sample_permutations(const Matrix& s, const SimilarityMatrix& a, int k,
                                        std::uint64_t seed);

}  // namespace seriate
