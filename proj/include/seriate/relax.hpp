#pragma once

#include <cstdint>
#include <vector>

#include "seriate/constraints.hpp"
#include "seriate/core.hpp"
#include "seriate/projection.hpp"

namespace seriate {

// Randomized ordering weights: each column is sort(g + noise * u) with u
// uniform on [-1, 1]^n, redrawn on ties so columns are strictly increasing.
struct EnsembleWeights {
  Matrix y;  // n x p
  double noise_scale = 0.0;
  std::uint64_t seed = 0;
  double gram_min_eigenvalue = 0.0;  // smallest eigenvalue of Y Y'

  int n() const { return static_cast<int>(y.rows()); }
  int p() const { return static_cast<int>(y.cols()); }
};

EnsembleWeights build_y(int n, int p, double noise_scale, std::uint64_t seed);

// Largest convex regularization weight: lambda_2(L) * lambda_1(Y Y').
double mu_bound(const Matrix& laplacian_a, const EnsembleWeights& y);

// Tr(Y' Pi' L Pi Y)/p - (mu/p) ||P Pi||_F^2 with P the centering projector.
double relaxed_objective(const Matrix& pi, const Matrix& laplacian_a, const EnsembleWeights& y,
                         double mu);
// (2/p) (L Pi Y Y' - mu P Pi).
Matrix relaxed_gradient(const Matrix& pi, const Matrix& laplacian_a, const EnsembleWeights& y,
                        double mu);

enum class Algorithm { frank_wolfe, accelerated_projected_gradient };

struct SolverConfig {
  Algorithm algorithm = Algorithm::accelerated_projected_gradient;
  double mu_fraction = 0.9;  // of mu_bound; must stay within [0, 1]
  int max_iters = 2000;
  double tolerance = 1e-6;
  double projection_tol = 1e-8;
  int projection_max_iters = 10000;
  std::uint64_t seed = 0;
  bool exact_line_search = true;  // Frank-Wolfe step rule; false = 2/(k+2)
};

struct SolverReport {
  Matrix solution;  // doubly stochastic within projection_tol
  std::vector<double> objective_trace;
  std::vector<double> gap_trace;  // Frank-Wolfe linearization gaps
  double final_gap = 0.0;
  int iterations = 0;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  double mu = 0.0;
  double mu_upper_bound = 0.0;
  bool converged = false;

  DoublyStochasticMatrix doubly_stochastic(double tol = 1e-6) const {
    return DoublyStochasticMatrix(solution, tol);
  }
};

// Conditional gradient over the Birkhoff polytope intersected with the
// orientation half-space (element 0 before element n-1). The linear
// minimization oracle stays exact: assignment solves swept over the
// half-space's multiplier. General ordering constraints are NOT supported
// here (the oracle would stop being an assignment problem); use apg_solve
// for those. Throws InfeasibleMuError when mu_fraction > 1.
SolverReport frank_wolfe_solve(const Matrix& laplacian_a, const EnsembleWeights& y,
                               const SolverConfig& cfg);

// Accelerated projected gradient with a dual-warm-started projection onto the
// constrained doubly stochastic set at every iteration, and a monotone
// restart safeguard.
SolverReport apg_solve(const Matrix& laplacian_a, const EnsembleWeights& y,
                       const ConstraintSet& constraints, const SolverConfig& cfg);

}  // namespace seriate
