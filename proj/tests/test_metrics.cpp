#include <doctest.h>

#include "seriate/datasets.hpp"
#include "seriate/metrics.hpp"
#include "support/oracles.hpp"

using namespace seriate;

TEST_CASE("kendall tau basics") {
  const Permutation id4 = Permutation::identity(4);
  CHECK(kendall_tau(id4, id4) == doctest::Approx(1.0));
  CHECK(kendall_tau(id4, id4.reversed()) == doctest::Approx(-1.0));
  const Permutation q = Permutation::from_one_based({1, 3, 2, 4});
  CHECK(kendall_tau(id4, q) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(kendall_tau(id4, Permutation::identity(5)), std::invalid_argument);
}

TEST_CASE("spearman rho basics") {
  const Permutation id3 = Permutation::identity(3);
  CHECK(spearman_rho(id3, id3) == doctest::Approx(1.0));
  CHECK(spearman_rho(id3, id3.reversed()) == doctest::Approx(-1.0));
  CHECK(spearman_rho(id3, Permutation::from_one_based({1, 3, 2})) == doctest::Approx(0.5));
}

TEST_CASE("correlations are symmetric and relabeling invariant") {
  Rng rng(163);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform_int(0, 8));
    const Permutation p = Permutation::random(n, rng);
    const Permutation q = Permutation::random(n, rng);
    const Permutation s = Permutation::random(n, rng);
    CHECK(kendall_tau(p, q) == doctest::Approx(kendall_tau(q, p)).epsilon(1e-12));
    CHECK(spearman_rho(p, q) == doctest::Approx(spearman_rho(q, p)).epsilon(1e-12));
    // Relabeling the elements of both orderings changes nothing.
    CHECK(kendall_tau(s.compose(p), s.compose(q)) ==
          doctest::Approx(kendall_tau(p, q)).epsilon(1e-12));
    CHECK(spearman_rho(s.compose(p), s.compose(q)) ==
          doctest::Approx(spearman_rho(p, q)).epsilon(1e-12));
  }
}

TEST_CASE("orientation flag takes the better direction") {
  Rng rng(167);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform_int(0, 8));
    const Permutation p = Permutation::random(n, rng);
    const Permutation q = Permutation::random(n, rng);
    CHECK(kendall_tau(p, q, true) ==
          doctest::Approx(std::max(kendall_tau(p, q), kendall_tau(p, q.reversed()))));
    CHECK(spearman_rho(p, q, true) ==
          doctest::Approx(std::max(spearman_rho(p, q), spearman_rho(p, q.reversed()))));
    CHECK(kendall_tau(p, q, true) >= 0.0);
  }
}

TEST_CASE("evaluate on the truth of a noiseless instance is perfect") {
  const LabeledSimilarity data = synthetic_pre_r(12, 5, 0.0, 83);
  const EvalReport ev = evaluate(data.a, data.truth, data.truth);
  CHECK(ev.tau == doctest::Approx(1.0));
  CHECK(ev.rho == doctest::Approx(1.0));
  CHECK(ev.r_violations == 0);
}

TEST_CASE("evaluate objective is bounded below by the exhaustive optimum") {
  Rng rng(173);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 6;
    const LabeledSimilarity data = synthetic_pre_r(n, 3, 0.2, rng.next());
    const auto exhaustive =
        seriate::testing::exhaustive_two_sum(data.a.matrix(), ranking_weights(n));
    const Permutation random_p = Permutation::random(n, rng);
    const EvalReport ev = evaluate(data.a, random_p, data.truth);
    CHECK(ev.objective >= exhaustive.optimum - 1e-9);
  }
}
