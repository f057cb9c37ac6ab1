#include "seriate/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace seriate {

namespace {

void check_sizes(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw std::invalid_argument("rank correlation: length mismatch");
  if (p.size() < 2) throw std::invalid_argument("rank correlation: need n >= 2");
}

double kendall_raw(const Permutation& p, const Permutation& q) {
  const std::vector<int> rp = p.ranks();
  const std::vector<int> rq = q.ranks();
  const int n = p.size();
  long concordant = 0, discordant = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const long s = static_cast<long>(rp[a] - rp[b]) * static_cast<long>(rq[a] - rq[b]);
      if (s > 0) {
        ++concordant;
      } else {
        ++discordant;  // permutations have no rank ties
      }
    }
  }
  return static_cast<double>(concordant - discordant) / (0.5 * n * (n - 1));
}

double spearman_raw(const Permutation& p, const Permutation& q) {
  const std::vector<int> rp = p.ranks();
  const std::vector<int> rq = q.ranks();
  const int n = p.size();
  double d2 = 0.0;
  for (int a = 0; a < n; ++a) {
    const double d = static_cast<double>(rp[a] - rq[a]);
    d2 += d * d;
  }
  return 1.0 - 6.0 * d2 / (static_cast<double>(n) * (static_cast<double>(n) * n - 1.0));
}

}  // namespace

double kendall_tau(const Permutation& p, const Permutation& q, bool orient) {
  check_sizes(p, q);
  const double raw = kendall_raw(p, q);
  return orient ? std::max(raw, kendall_raw(p, q.reversed())) : raw;
}

double spearman_rho(const Permutation& p, const Permutation& q, bool orient) {
  check_sizes(p, q);
  const double raw = spearman_raw(p, q);
  return orient ? std::max(raw, spearman_raw(p, q.reversed())) : raw;
}

EvalReport evaluate(const SimilarityMatrix& a, const Permutation& candidate,
                    const std::optional<Permutation>& truth, const std::optional<Vector>& y) {
  if (candidate.size() != a.size()) throw std::invalid_argument("evaluate: dimension mismatch");
  EvalReport report;
  const Vector weights = y ? *y : ranking_weights(a.size());
  report.objective = two_sum_objective(a, candidate, weights);
  report.r_violations = is_r_matrix(apply_ordering(candidate, a.matrix())).violations;
  if (truth) {
    report.has_truth = true;
    report.tau = kendall_tau(candidate, *truth, false);
    report.tau_oriented = kendall_tau(candidate, *truth, true);
    report.rho = spearman_rho(candidate, *truth, false);
    report.rho_oriented = spearman_rho(candidate, *truth, true);
  }
  return report;
}

}  // namespace seriate
