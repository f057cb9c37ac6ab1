#include "seriate/rounding.hpp"

#include <algorithm>
#include <cmath>

#include "seriate/errors.hpp"
#include "seriate/rng.hpp"

namespace seriate {

SinkhornResult sinkhorn(const Matrix& m, const SinkhornOptions& opts) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  if (rows != cols) throw std::invalid_argument("sinkhorn: matrix must be square");
  if (m.minCoeff() < 0.0) throw std::invalid_argument("sinkhorn: entries must be nonnegative");

  SinkhornResult result;
  result.positivity_warning = (m.minCoeff() == 0.0);
  result.scaled = m;

  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    const Vector row_sums = result.scaled.rowwise().sum();
    if (row_sums.minCoeff() <= 0.0) {
      throw ConvergenceError("sinkhorn: zero row, the zero pattern lacks support");
    }
    result.scaled.array().colwise() /= row_sums.array();
    const Vector col_sums = result.scaled.colwise().sum();
    if (col_sums.minCoeff() <= 0.0) {
      throw ConvergenceError("sinkhorn: zero column, the zero pattern lacks support");
    }
    result.scaled.array().rowwise() /= col_sums.transpose().array();
    result.frobenius_trace.push_back(result.scaled.norm());
    result.iterations = iter;

    const double row_dev = (result.scaled.rowwise().sum().array() - 1.0).abs().maxCoeff();
    const double col_dev = (result.scaled.colwise().sum().array() - 1.0).abs().maxCoeff();
    if (std::max(row_dev, col_dev) <= opts.tol) return result;
  }
  throw ConvergenceError("sinkhorn: iteration cap reached before tolerance");
}

SampledPermutations sample_permutations(const Matrix& s, const SimilarityMatrix& a, int k,
                                        std::uint64_t seed) {
  const int n = static_cast<int>(s.rows());
  if (s.cols() != n || a.size() != n) {
    throw std::invalid_argument("sample_permutations: dimension mismatch");
  }
  if (k < 1) throw std::invalid_argument("sample_permutations: need k >= 1");

  const Matrix lap = laplacian(a);
  const Vector g = ranking_weights(n);
  Rng rng(seed);

  SampledPermutations out;
  bool have_best = false;

  for (int draw = 0; draw < k; ++draw) {
    Vector v(n);
    while (true) {
      for (int i = 0; i < n; ++i) v(i) = rng.uniform();
      std::sort(v.data(), v.data() + n);
      bool strict = true;
      for (int i = 1; i < n && strict; ++i) strict = v(i) > v(i - 1);
      if (strict) break;
    }
    Permutation candidate = argsort(s * v);
    // Seriation is defined up to reversal; both directions share the same
    // objective, so resolve the orientation with the solver's convention.
    const std::vector<int> ranks = candidate.ranks();
    if (ranks[0] > ranks[n - 1]) candidate = candidate.reversed();

    const double obj = two_sum_objective(lap, candidate, g);
    out.objective_trace.push_back(obj);
    if (!have_best || obj < out.objective) {
      out.best = candidate;
      out.objective = obj;
      have_best = true;
    }
  }
  return out;
}

}  // namespace seriate
