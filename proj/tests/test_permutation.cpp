#include <doctest.h>

#include "seriate/permutation.hpp"

using namespace seriate;

TEST_CASE("permutation validation and round trips") {
  CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({0, 3, 1}), std::invalid_argument);

  const Permutation p({2, 0, 1});
  CHECK(p.inverse().compose(p) == Permutation::identity(3));
  CHECK(p.compose(p.inverse()) == Permutation::identity(3));
  CHECK(p.one_based() == std::vector<int>{3, 1, 2});
  CHECK(Permutation::from_one_based({3, 1, 2}) == p);
  CHECK(p.reversed() == Permutation({1, 0, 2}));
}

TEST_CASE("ranks are the inverse view") {
  const Permutation p({2, 0, 1});
  const std::vector<int> r = p.ranks();
  for (int pos = 0; pos < 3; ++pos) CHECK(r[p(pos)] == pos);
}

TEST_CASE("matrix views gather and scatter") {
  const Permutation p({2, 0, 1});
  Eigen::VectorXd y(3);
  y << 10, 20, 30;
  const Eigen::VectorXd gathered = p.matrix() * y;
  for (int pos = 0; pos < 3; ++pos) CHECK(gathered(pos) == y(p(pos)));
  // rank_matrix * g puts each element's position weight on the element row.
  const Eigen::VectorXd positions = p.rank_matrix() * y;
  const std::vector<int> r = p.ranks();
  for (int e = 0; e < 3; ++e) CHECK(positions(e) == y(r[e]));
  CHECK((p.rank_matrix() - p.matrix().transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("apply_ordering reindexes consistently") {
  Eigen::MatrixXd a(3, 3);
  a << 0, 1, 2, 1, 0, 3, 2, 3, 0;
  const Permutation p({2, 0, 1});
  const Eigen::MatrixXd b = apply_ordering(p, a);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(b(i, j) == a(p(i), p(j)));
  }
}

TEST_CASE("argsort is stable on ties") {
  Eigen::VectorXd v(4);
  v << 1.0, 0.5, 0.5, 0.2;
  CHECK(argsort(v) == Permutation({3, 1, 2, 0}));
}

TEST_CASE("random permutations are reproducible from the seed") {
  Rng a(99), b(99);
  CHECK(Permutation::random(20, a) == Permutation::random(20, b));
}
