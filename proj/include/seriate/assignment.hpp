#pragma once

#include "seriate/core.hpp"

namespace seriate {

// Exact dense linear assignment by shortest augmenting paths with dual
// potentials (Jonker-Volgenant style, O(n^3)). Returns the column assigned to
// each row of the cost matrix; ties resolve to the lowest column index.
std::vector<int> solve_assignment(const Matrix& cost);

// Total cost of an assignment under the given cost matrix.
double assignment_cost(const Matrix& cost, const std::vector<int>& row_to_col);

}  // namespace seriate
