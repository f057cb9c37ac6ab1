#pragma once

#include <optional>

#include "seriate/core.hpp"
#include "seriate/permutation.hpp"

namespace seriate {

// Rank correlations between two orderings, computed on element ranks (the
// position each element receives). With orient = true, the better of q and
// its reversal is reported, since a seriation is defined up to reversal.
double kendall_tau(const Permutation& p, const Permutation& q, bool orient = false);
double spearman_rho(const Permutation& p, const Permutation& q, bool orient = false);

struct EvalReport {
  double objective = 0.0;
  long r_violations = 0;
  bool has_truth = false;
  double tau = 0.0;
  double tau_oriented = 0.0;
  double rho = 0.0;
  double rho_oriented = 0.0;
};

// Ordering quality summary: the 2-SUM objective of the candidate under
// weights y (default g), the Robinson violations of the reordered matrix,
// and rank correlations against the truth when one is given.
EvalReport evaluate(const SimilarityMatrix& a, const Permutation& candidate,
                    const std::optional<Permutation>& truth = std::nullopt,
                    const std::optional<Vector>& y = std::nullopt);

}  // namespace seriate
