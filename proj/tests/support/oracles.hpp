#pragma once

// Independent reference computations used by the unit and acceptance suites.
// Everything here deliberately avoids the library's solver code paths: the
// objective is a direct double sum, the optimum comes from exhaustive
// enumeration, and the reference projection is Dykstra's alternating method.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "seriate/constraints.hpp"
#include "seriate/core.hpp"
#include "seriate/permutation.hpp"
#include "seriate/rng.hpp"

namespace seriate::testing {

// 0.5 * sum_ij A_ij (w_i - w_j)^2 with w(p(k)) = y(k), summed directly.
inline double direct_sum_objective(const Matrix& a, const Permutation& p, const Vector& y) {
  const int n = static_cast<int>(a.rows());
  Vector w(n);
  for (int k = 0; k < n; ++k) w(p(k)) = y(k);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d = w(i) - w(j);
      total += a(i, j) * d * d;
    }
  }
  return 0.5 * total;
}

struct ExhaustiveResult {
  double optimum = std::numeric_limits<double>::infinity();
  std::vector<Permutation> minimizers;  // within `tol` of the optimum
};

// Enumerates all n! orderings. Keep n <= 9.
inline ExhaustiveResult exhaustive_two_sum(const Matrix& a, const Vector& y, double tol = 1e-9) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  const Matrix lap = laplacian(a);
  ExhaustiveResult result;
  do {
    Vector w(n);
    for (int k = 0; k < n; ++k) w(order[k]) = y(k);
    const double value = w.dot(lap * w);
    if (value < result.optimum - tol) {
      result.optimum = value;
      result.minimizers.clear();
      result.minimizers.emplace_back(order);
    } else if (value <= result.optimum + tol) {
      result.minimizers.emplace_back(order);
      result.optimum = std::min(result.optimum, value);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return result;
}

// Closed-form objective change from swapping the values y_j and y_{j+1},
// under the y'Ly normalization (half of the raw double-sum identity).
inline double switch_delta(const Matrix& a, const Vector& y, int j) {
  const int n = static_cast<int>(a.rows());
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == j || i == j + 1) continue;
    s += (0.5 * (y(j) + y(j + 1)) - y(i)) * (y(j + 1) - y(j)) * (a(i, j + 1) - a(i, j));
  }
  return 2.0 * s;
}

// Dykstra's alternating projections onto the intersection of
//   {X 1 = 1}, {X' 1 = 1}, {X >= 0} and each half-space <d g', X> + delta <= 0.
// Converges to the exact Euclidean projection; used as the QP reference.
inline Matrix dykstra_project(const Matrix& pi0, const ConstraintSet& constraints,
                              const Vector& g, int iterations = 200000, double tol = 1e-12) {
  const int n = static_cast<int>(pi0.rows());
  const Matrix& d = constraints.d();
  const int nc = static_cast<int>(d.cols());
  const Vector ones = Vector::Ones(n);

  const int num_sets = 3 + nc;
  std::vector<Matrix> corrections(num_sets, Matrix::Zero(n, n));
  Matrix x = pi0;
  Matrix previous = x;

  for (int it = 0; it < iterations; ++it) {
    for (int s = 0; s < num_sets; ++s) {
      const Matrix z = x + corrections[s];
      Matrix projected;
      if (s == 0) {
        projected = z - ((z * ones - ones) / n) * ones.transpose();
      } else if (s == 1) {
        projected = z - ones * ((z.transpose() * ones - ones) / n).transpose();
      } else if (s == 2) {
        projected = z.cwiseMax(0.0);
      } else {
        const int c = s - 3;
        const Matrix normal = d.col(c) * g.transpose();
        const double violation = normal.cwiseProduct(z).sum() + constraints.delta()(c);
        projected = violation > 0.0 ? Matrix(z - (violation / normal.squaredNorm()) * normal) : z;
      }
      corrections[s] = z - projected;
      x = projected;
    }
    if (it % 100 == 99) {
      if ((x - previous).norm() <= tol * (1.0 + x.norm())) break;
      previous = x;
    }
  }
  return x;
}

// Population variance of a contiguous slice y[u..v] inclusive.
inline double slice_variance(const Vector& y, int u, int v) {
  const int len = v - u + 1;
  double mean = 0.0, sq = 0.0;
  for (int i = u; i <= v; ++i) {
    mean += y(i);
    sq += y(i) * y(i);
  }
  mean /= len;
  return sq / len - mean * mean;
}

// Random matrix with unimodal columns: rises to a random peak, then falls.
inline Matrix random_q_matrix(int rows, int cols, Rng& rng) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    const int peak = static_cast<int>(rng.uniform_int(0, rows - 1));
    double v = rng.uniform(0.0, 1.0);
    for (int i = peak; i >= 0; --i) {
      m(i, j) = v;
      v = std::max(0.0, v - rng.uniform(0.0, 0.5));
    }
    v = m(peak, j);
    for (int i = peak + 1; i < rows; ++i) {
      v = std::max(0.0, v - rng.uniform(0.0, 0.5));
      m(i, j) = v;
    }
  }
  return m;
}

inline Vector random_unimodal_vector(int n, Rng& rng, bool integer_valued = false) {
  Vector v(n);
  const int peak = static_cast<int>(rng.uniform_int(0, n - 1));
  double x = integer_valued ? static_cast<double>(rng.uniform_int(3, 12)) : rng.uniform(1.0, 6.0);
  for (int i = peak; i >= 0; --i) {
    v(i) = x;
    const double drop = integer_valued ? static_cast<double>(rng.uniform_int(0, 2))
                                       : rng.uniform(0.0, 1.5);
    x = std::max(0.0, x - drop);
  }
  x = v(peak);
  for (int i = peak + 1; i < n; ++i) {
    const double drop = integer_valued ? static_cast<double>(rng.uniform_int(0, 2))
                                       : rng.uniform(0.0, 1.5);
    x = std::max(0.0, x - drop);
    v(i) = x;
  }
  return v;
}

inline Matrix random_symmetric_nonnegative(int n, Rng& rng) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = rng.uniform(0.0, 1.0);
  }
  return m;
}

}  // namespace seriate::testing
