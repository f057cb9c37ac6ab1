#pragma once

#include <Eigen/Dense>
#include <vector>

#include "seriate/rng.hpp"

namespace seriate {

// A linear ordering of n elements. order()[k] is the element placed at
// position k (0-based internally; file I/O and printing are 1-based).
//
// The inverse view ranks()[e] gives the position of element e; this is the
// vector that appears as Pi*g in the quadratic relaxations.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> order);

  static Permutation identity(int n);
  static Permutation random(int n, Rng& rng);
  // Accepts 1-based entries, e.g. from a permutation file.
  static Permutation from_one_based(const std::vector<int>& order);

  int size() const { return static_cast<int>(order_.size()); }
  int operator()(int position) const { return order_[position]; }
  const std::vector<int>& order() const { return order_; }
  std::vector<int> one_based() const;

  // ranks()[element] = position of that element.
  std::vector<int> ranks() const;
  Permutation inverse() const;
  // Same chain read back to front.
  Permutation reversed() const;
  // (a.compose(b))(i) = a(b(i)).
  Permutation compose(const Permutation& other) const;

  // M(k, order[k]) = 1, so (M*y)(k) = y(order[k]) gathers values by position.
  Eigen::MatrixXd matrix() const;
  // R(e, ranks[e]) = 1; rows are indexed by element. This is the permutation
  // matrix relaxed to doubly stochastic matrices in the solvers, since
  // (R*g)(e) is the position of element e.
  Eigen::MatrixXd rank_matrix() const;

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.order_ == b.order_;
  }
  friend bool operator!=(const Permutation& a, const Permutation& b) {
    return !(a == b);
  }

 private:
  std::vector<int> order_;
};

// B(i, j) = A(p(i), p(j)): the matrix re-indexed so that position i holds
// element p(i). A correct seriation of a pre-R matrix makes this an R-matrix.
Eigen::MatrixXd apply_ordering(const Permutation& p, const Eigen::MatrixXd& a);

// Sorts values ascending and returns the ordering; ties keep index order.
Permutation argsort(const Eigen::VectorXd& values);

}  // namespace seriate
