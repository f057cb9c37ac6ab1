#pragma once

#include "seriate/constraints.hpp"
#include "seriate/core.hpp"

namespace seriate {

// Nonnegative with unit row and column sums, up to `tol`.
class DoublyStochasticMatrix {
 public:
  explicit DoublyStochasticMatrix(Matrix entries, double tol = 1e-8);

  int size() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }

  // Largest deviation from the defining equalities/inequalities.
  static double deviation(const Matrix& m);

 private:
  Matrix entries_;
};

// Dual variables of the projection problem; reusable as a warm start.
struct ProjectionDuals {
  Matrix z_mat;  // multiplier of Pi >= 0
  Vector x;      // row-sum equalities
  Vector y;      // column-sum equalities
  Vector z;      // ordering constraints, >= 0
};

struct ProjectionOptions {
  double tolerance = 1e-7;              // relative primal-dual gap target
  double feasibility_tolerance = 1e-8;  // max constraint violation target
  int max_sweeps = 10000;
};

struct ProjectionResult {
  Matrix pi;               // Euclidean projection of pi0 (within tolerances)
  ProjectionDuals duals;
  double gap = 0.0;          // relative primal-dual gap at termination
  double feasibility = 0.0;  // worst violation at termination
  int sweeps = 0;
  bool converged = false;    // false = gap not reached within the sweep cap
};

// Euclidean projection of pi0 onto
//   { Pi : Pi 1 = 1, Pi' 1 = 1, Pi >= 0, D' Pi g + delta <= 0 }
// by exact block-coordinate ascent on the dual. The four dual blocks are
// updated cyclically in the order z_mat, x, y, z; the z block is maximized by
// clipped per-coordinate Newton passes, which stays exact for any constraint
// matrix whose columns are nonzero (dependent columns are fine). The primal
// is reconstructed from stationarity of the Lagrangian.
// Throws RankDeficientError if a constraint column is numerically zero.
ProjectionResult project_doubly_stochastic(const Matrix& pi0, const ConstraintSet& constraints,
                                           const Vector& g, const ProjectionOptions& opts = {},
                                           const ProjectionDuals* warm_start = nullptr);

}  // namespace seriate
