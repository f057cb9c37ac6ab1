#pragma once

#include <Eigen/Dense>
#include <vector>

#include "seriate/permutation.hpp"

namespace seriate {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Symmetric nonnegative pairwise similarity data. The constructor validates
// (and exactly symmetrizes, to absorb roundoff within `tol`) its input.
class SimilarityMatrix {
 public:
  explicit SimilarityMatrix(Matrix entries, double tol = 1e-9);

  int size() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

 private:
  Matrix entries_;
};

// Block matrix equal to `weight` on the square index block [u, v] x [u, v]
// (inclusive, 0-based) and zero elsewhere.
struct CutMatrix {
  int u = 0;
  int v = 0;
  double weight = 1.0;

  Matrix dense(int n) const;
};

struct CutDecomposition {
  std::vector<CutMatrix> terms;
  double residual_norm = 0.0;

  Matrix sum(int n) const;
};

// diag(A*1) - A. Symmetric PSD with row sums zero.
Matrix laplacian(const Matrix& a);
Matrix laplacian(const SimilarityMatrix& a);

// Natural ordering weights g = (1, ..., n).
Vector ranking_weights(int n);

// Quadratic ordering objective w' * L_A * w where w places y's k-th entry on
// the element at position k, i.e. w(p(k)) = y(k). Equals
// 0.5 * sum_ij A_ij (w_i - w_j)^2; minimized over p by a correct seriation.
double two_sum_objective(const SimilarityMatrix& a, const Permutation& p, const Vector& y);
double two_sum_objective(const Matrix& laplacian_a, const Permutation& p, const Vector& y);

struct RMatrixCheck {
  bool is_r = false;
  long violations = 0;  // failed monotonicity comparisons
  long comparisons = 0;
};

// Robinson test: in the lower triangle, entries must not increase moving away
// from the diagonal along rows or columns. `strict` demands strict decay for
// comparisons not touching the diagonal. `tol` is the slack on each
// comparison, for auditing noisy real-valued matrices.
RMatrixCheck is_r_matrix(const Matrix& a, bool strict = false, double tol = 0.0);
RMatrixCheck is_r_matrix(const SimilarityMatrix& a, bool strict = false, double tol = 0.0);

// Every column rises to a peak then falls (plateaus allowed).
bool is_q_matrix(const Matrix& a, double tol = 0.0);

// Binary matrix whose columns have consecutive ones.
bool is_p_matrix(const Matrix& a);

// (A o B)_ij = sum_k min(A_ik, B_kj). Matches A*B for 0/1 matrices.
Matrix circular_product(const Matrix& a, const Matrix& b);

// Deflation of min(a_i, a_j) for a nonnegative unimodal vector: repeatedly
// peel (max - next_max) * CUT(argmax interval). At most n terms and the terms
// sum back to a o a' exactly. Throws std::invalid_argument when the argmax
// set is not contiguous at some step (input not unimodal).
CutDecomposition cut_decomposition(const Vector& a);

// C o C' as a similarity matrix; C must be nonnegative.
SimilarityMatrix square_similarity(const Matrix& c);

}  // namespace seriate
