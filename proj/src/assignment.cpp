#include "seriate/assignment.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace seriate {

std::vector<int> solve_assignment(const Matrix& cost) {
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n) throw std::invalid_argument("solve_assignment: cost must be square");
  const double inf = std::numeric_limits<double>::infinity();

  // Column n is a virtual start column; p[j] is the row matched to column j.
  std::vector<double> u(n, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, -1), way(n + 1, n);

  for (int i = 0; i < n; ++i) {
    p[n] = i;
    int j0 = n;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = -1;
      for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          if (p[j] >= 0) u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != -1);
    // Unwind the augmenting path.
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != n);
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 0; j < n; ++j) row_to_col[p[j]] = j;
  return row_to_col;
}

double assignment_cost(const Matrix& cost, const std::vector<int>& row_to_col) {
  double total = 0.0;
  for (int i = 0; i < static_cast<int>(row_to_col.size()); ++i) total += cost(i, row_to_col[i]);
  return total;
}

}  // namespace seriate
