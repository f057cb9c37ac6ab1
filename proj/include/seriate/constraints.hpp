#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "seriate/core.hpp"

namespace seriate {

// One semi-supervised ordering constraint, 0-based indices.
//   order:    element i appears before element j (position(i) + 1 <= position(j))
//   distance: a <= position(i) - position(j) <= b
struct ConstraintSpec {
  enum class Kind { order, distance };
  Kind kind = Kind::order;
  int i = 0;
  int j = 0;
  double a = 0.0;
  double b = 0.0;

  static ConstraintSpec make_order(int i, int j) { return {Kind::order, i, j, 0.0, 0.0}; }
  static ConstraintSpec make_distance(int i, int j, double a, double b) {
    return {Kind::distance, i, j, a, b};
  }
};

// Linear constraints D' * Pi * g + delta <= 0 on the relaxed permutation
// matrix. Column 0 is always the symmetry breaker e_1 - e_n with delta = 1,
// which pins element 0 before element n-1. Exact duplicate columns (same
// column and offset) are dropped; semantically contradictory specs are kept
// and surface as infeasibility at solve time.
class ConstraintSet {
 public:
  explicit ConstraintSet(int n);

  int n() const { return n_; }
  int columns() const { return static_cast<int>(d_.cols()); }
  const Matrix& d() const { return d_; }
  const Vector& delta() const { return delta_; }
  const std::vector<ConstraintSpec>& specs() const { return specs_; }

  void add(const ConstraintSpec& spec);

  // Componentwise D' * r + delta where r(e) is the position weight of element
  // e (for a permutation, r = g re-indexed by ranks). Feasible iff <= 0.
  Vector residual(const Vector& position_weights) const;
  bool satisfied_by(const Permutation& p, double tol = 1e-9) const;

 private:
  void push_column(const Vector& col, double offset);

  int n_;
  Matrix d_;
  Vector delta_;
  std::vector<ConstraintSpec> specs_;
};

ConstraintSet build_constraints(int n, const std::vector<ConstraintSpec>& specs);

// Drops order constraints implied by transitivity: (e_i - e_j) + (e_j - e_k)
// dominates e_i - e_k at offset 2 >= 1, so the relaxed feasible set is
// unchanged while the dual dimension shrinks (dense samples collapse to
// their covering pairs). Applied only when the order digraph is acyclic;
// distance constraints pass through untouched.
ConstraintSet reduce_redundant_orders(const ConstraintSet& constraints);

// File format: one constraint per line, `ord i j` or `dist i j a b` with
// 1-based indices; blank lines and `#` comments ignored.
std::vector<ConstraintSpec> parse_constraints(std::istream& in);
std::vector<ConstraintSpec> load_constraints(const std::string& path);
void save_constraints(const std::string& path, const std::vector<ConstraintSpec>& specs);

}  // namespace seriate
