#include <doctest.h>

#include "seriate/datasets.hpp"
#include "seriate/errors.hpp"
#include "seriate/metrics.hpp"
#include "seriate/spectral.hpp"
#include "support/oracles.hpp"

using namespace seriate;
namespace oracle = seriate::testing;

namespace {

SimilarityMatrix path_graph(int n) {
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = 1.0;
  return SimilarityMatrix(a);
}

}  // namespace

TEST_CASE("fiedler pair of the 3-path") {
  const FiedlerResult r = fiedler(path_graph(3));
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
  // Eigenvector proportional to (1, 0, -1).
  CHECK(std::abs(r.vector(1)) < 1e-8);
  CHECK(r.vector(0) == doctest::Approx(-r.vector(2)).epsilon(1e-8));
  CHECK(std::abs(r.vector.sum()) < 1e-8);
  CHECK(r.vector.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fiedler residual is small on random connected inputs") {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5 + static_cast<int>(rng.uniform_int(0, 40));
    Matrix a = oracle::random_symmetric_nonnegative(n, rng);
    a.array() += 0.01;  // keep it connected
    const SimilarityMatrix sim(a);
    const Matrix l = laplacian(sim);
    const FiedlerResult r = fiedler(sim);
    CHECK((l * r.vector - r.value * r.vector).norm() <= 1e-6 * l.norm());
  }
}

TEST_CASE("disconnected graphs are rejected") {
  Matrix a = Matrix::Zero(4, 4);
  a(0, 1) = a(1, 0) = 1.0;
  a(2, 3) = a(3, 2) = 1.0;
  CHECK_THROWS_AS(fiedler(SimilarityMatrix(a)), DisconnectedGraphError);
}

TEST_CASE("Fiedler vector of a strict R-matrix is monotone after sign fix") {
  Rng rng(67);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 5 + static_cast<int>(rng.uniform_int(0, 20));
    // Strict profile, unshuffled: invert the labeled truth back to R order.
    const LabeledSimilarity data = synthetic_pre_r(n, 3, 0.0, rng.next());
    const Matrix r_ordered = apply_ordering(data.truth, data.a.matrix());
    const SpectralOrder so = spectral_order(SimilarityMatrix(r_ordered));
    const Vector& v = so.fiedler.vector;
    const bool increasing = [&] {
      for (int i = 1; i < n; ++i) {
        if (v(i) < v(i - 1)) return false;
      }
      return true;
    }();
    const bool decreasing = [&] {
      for (int i = 1; i < n; ++i) {
        if (v(i) > v(i - 1)) return false;
      }
      return true;
    }();
    CHECK((increasing || decreasing));
  }
}

TEST_CASE("spectral_order recovers shuffled strict pre-R matrices") {
  Rng rng(71);
  int recovered = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = 5 + static_cast<int>(rng.uniform_int(0, 45));
    const LabeledSimilarity data = synthetic_pre_r(n, 5, 0.0, rng.next());
    const Permutation order = spectral_order(data.a).order;
    const double tau = kendall_tau(order, data.truth, /*orient=*/true);
    if (tau == doctest::Approx(1.0)) ++recovered;
  }
  CHECK(recovered == trials);
}

TEST_CASE("spectral order of a two-element similarity") {
  Matrix a(2, 2);
  a << 0, 1, 1, 0;
  const SpectralOrder so = spectral_order(SimilarityMatrix(a));
  CHECK(so.order == Permutation::identity(2));
}

TEST_CASE("spectral objective never exceeds the shuffled identity objective") {
  Rng rng(73);
  const Vector y5 = ranking_weights(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 6 + static_cast<int>(rng.uniform_int(0, 20));
    const LabeledSimilarity data = synthetic_pre_r(n, 4, 0.0, rng.next());
    const Vector g = ranking_weights(n);
    const double spectral = two_sum_objective(data.a, spectral_order(data.a).order, g);
    const double shuffled = two_sum_objective(data.a, Permutation::identity(n), g);
    CHECK(spectral <= shuffled + 1e-9);
  }
  (void)y5;
}

TEST_CASE("dense and iterative Fiedler values agree") {
  Rng rng(79);
  for (const int n : {40, 120, 500}) {
    // Banded similarity, the typical iterative-path workload.
    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < std::min(n, i + 6); ++j) {
        a(i, j) = a(j, i) = rng.uniform(0.5, 2.0);
      }
    }
    const SimilarityMatrix sim(a);
    FiedlerOptions dense_opts;
    dense_opts.method = FiedlerMethod::dense;
    FiedlerOptions iter_opts;
    iter_opts.method = FiedlerMethod::iterative;
    const FiedlerResult rd = fiedler(sim, dense_opts);
    const FiedlerResult ri = fiedler(sim, iter_opts);
    CHECK(ri.value == doctest::Approx(rd.value).epsilon(1e-6));
    CHECK(std::abs(std::abs(rd.vector.dot(ri.vector)) - 1.0) < 1e-5);
  }
}

TEST_CASE("multiplicity warning fires on symmetric block structure") {
  // Two identical loose blocks give a repeated Fiedler value.
  const int n = 6;
  Matrix a = Matrix::Constant(n, n, 0.01);
  a.block(0, 0, 3, 3).setConstant(1.0);
  a.block(3, 3, 3, 3).setConstant(1.0);
  for (int i = 0; i < n; ++i) a(i, i) = 0.0;
  const SpectralOrder so = spectral_order(SimilarityMatrix(a));
  CHECK(so.fiedler.multiplicity_warning);
}
