#include <doctest.h>

#include <sstream>

#include "seriate/constraints.hpp"

using namespace seriate;

TEST_CASE("empty constraint set holds only the symmetry breaker") {
  const ConstraintSet c = build_constraints(5, {});
  CHECK(c.columns() == 1);
  CHECK(c.delta()(0) == 1.0);
  CHECK(c.d()(0, 0) == 1.0);
  CHECK(c.d()(4, 0) == -1.0);
  // Satisfied by any ordering placing element 0 before element 4.
  CHECK(c.satisfied_by(Permutation::identity(5)));
  CHECK_FALSE(c.satisfied_by(Permutation::identity(5).reversed()));
}

TEST_CASE("order constraint column encodes position(i) + 1 <= position(j)") {
  const ConstraintSet c = build_constraints(6, {ConstraintSpec::make_order(1, 4)});
  REQUIRE(c.columns() == 2);
  // Ordering with element 1 at position 2 and element 4 at position 3.
  const Permutation p({0, 2, 1, 4, 3, 5});
  CHECK(p.ranks()[1] == 2);
  CHECK(p.ranks()[4] == 3);
  CHECK(c.satisfied_by(p));
  CHECK_FALSE(c.satisfied_by(p.reversed()));
}

TEST_CASE("distance constraint pins the rank separation exactly when a == b") {
  const ConstraintSet c = build_constraints(4, {ConstraintSpec::make_distance(0, 2, 2, 2)});
  std::vector<int> order(4);
  for (int i = 0; i < 4; ++i) order[i] = i;
  int satisfied = 0;
  do {
    const Permutation p(order);
    const std::vector<int> r = p.ranks();
    const bool expected = (r[0] - r[2] == 2) && (r[0] < r[3]);
    CHECK(c.satisfied_by(p) == expected);
    satisfied += expected;
  } while (std::next_permutation(order.begin(), order.end()));
  CHECK(satisfied > 0);
}

TEST_CASE("duplicate columns are dropped, contradictions kept") {
  // order(0, n-1) duplicates the symmetry breaker exactly.
  const ConstraintSet dup = build_constraints(4, {ConstraintSpec::make_order(0, 3)});
  CHECK(dup.columns() == 1);
  // The reverse orientation is a contradiction, not a duplicate.
  const ConstraintSet contra = build_constraints(4, {ConstraintSpec::make_order(3, 0)});
  CHECK(contra.columns() == 2);
}

TEST_CASE("constraint validation") {
  CHECK_THROWS_AS(build_constraints(4, {ConstraintSpec::make_order(0, 4)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_constraints(4, {ConstraintSpec::make_order(2, 2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_constraints(4, {ConstraintSpec::make_distance(0, 1, 3, 2)}),
                  std::invalid_argument);
}

TEST_CASE("transitive reduction preserves the feasible set") {
  Rng rng(251);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + static_cast<int>(rng.uniform_int(0, 2));
    // Consistent random order constraints from a hidden total order.
    const Permutation hidden = Permutation::random(n, rng);
    const std::vector<int> ranks =
        (hidden.ranks()[0] <= hidden.ranks()[n - 1] ? hidden : hidden.reversed()).ranks();
    std::vector<ConstraintSpec> specs;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng.uniform() < 0.8) {
          specs.push_back(ranks[i] < ranks[j] ? ConstraintSpec::make_order(i, j)
                                              : ConstraintSpec::make_order(j, i));
        }
      }
    }
    const ConstraintSet raw = build_constraints(n, specs);
    const ConstraintSet reduced = reduce_redundant_orders(raw);
    CHECK(reduced.columns() <= raw.columns());
    // Same feasibility verdict on every permutation.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    do {
      const Permutation p(order);
      CHECK(raw.satisfied_by(p) == reduced.satisfied_by(p));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  // Cyclic inputs pass through untouched.
  const ConstraintSet cyclic = build_constraints(
      4, {ConstraintSpec::make_order(0, 1), ConstraintSpec::make_order(1, 2),
          ConstraintSpec::make_order(2, 0)});
  CHECK(reduce_redundant_orders(cyclic).columns() == cyclic.columns());
}

TEST_CASE("constraint file round trip with comments") {
  std::istringstream in(
      "# archaeology hints\n"
      "ord 2 5\n"
      "\n"
      "dist 1 3 2 4  # mate pair\n");
  const std::vector<ConstraintSpec> specs = parse_constraints(in);
  REQUIRE(specs.size() == 2);
  CHECK(specs[0].kind == ConstraintSpec::Kind::order);
  CHECK(specs[0].i == 1);
  CHECK(specs[0].j == 4);
  CHECK(specs[1].kind == ConstraintSpec::Kind::distance);
  CHECK(specs[1].i == 0);
  CHECK(specs[1].j == 2);
  CHECK(specs[1].a == 2.0);
  CHECK(specs[1].b == 4.0);

  std::istringstream bad("ord 1\n");
  CHECK_THROWS_AS(parse_constraints(bad), std::invalid_argument);
}
