#include "seriate/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seriate {

SimilarityMatrix::SimilarityMatrix(Matrix entries, double tol) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("SimilarityMatrix: matrix must be square");
  }
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  if ((entries_ - entries_.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
    throw std::invalid_argument("SimilarityMatrix: matrix is not symmetric");
  }
  if (entries_.minCoeff() < -tol * scale) {
    throw std::invalid_argument("SimilarityMatrix: entries must be nonnegative");
  }
  entries_ = ((entries_ + entries_.transpose()) / 2.0).cwiseMax(0.0);
}

Matrix CutMatrix::dense(int n) const {
  Matrix m = Matrix::Zero(n, n);
  m.block(u, u, v - u + 1, v - u + 1).setConstant(weight);
  return m;
}

Matrix CutDecomposition::sum(int n) const {
  Matrix m = Matrix::Zero(n, n);
  for (const CutMatrix& t : terms) {
    m.block(t.u, t.u, t.v - t.u + 1, t.v - t.u + 1).array() += t.weight;
  }
  return m;
}

Matrix laplacian(const Matrix& a) {
  Vector degrees = a.rowwise().sum();
  Matrix l = -a;
  l.diagonal() += degrees;
  return l;
}

Matrix laplacian(const SimilarityMatrix& a) { return laplacian(a.matrix()); }

Vector ranking_weights(int n) {
  return Vector::LinSpaced(n, 1.0, static_cast<double>(n));
}

double two_sum_objective(const Matrix& laplacian_a, const Permutation& p, const Vector& y) {
  const int n = static_cast<int>(laplacian_a.rows());
  if (p.size() != n || y.size() != n) {
    throw std::invalid_argument("two_sum_objective: dimension mismatch");
  }
  Vector w(n);
  for (int k = 0; k < n; ++k) w(p(k)) = y(k);
  return w.dot(laplacian_a * w);
}

double two_sum_objective(const SimilarityMatrix& a, const Permutation& p, const Vector& y) {
  return two_sum_objective(laplacian(a), p, y);
}

RMatrixCheck is_r_matrix(const Matrix& a, bool strict, double tol) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("is_r_matrix: matrix must be square");
  RMatrixCheck check;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      // Along row i of the lower triangle: a(i, j) <= a(i, j + 1). The
      // comparison against the diagonal (j + 1 == i) is never strict.
      ++check.comparisons;
      const bool row_strict = strict && (j + 1 < i);
      const double row_gap = a(i, j + 1) - a(i, j);
      if (row_gap < -tol || (row_strict && !(row_gap > tol))) ++check.violations;
      // Down column j: a(i + 1, j) <= a(i, j).
      if (i + 1 < n) {
        ++check.comparisons;
        const double col_gap = a(i, j) - a(i + 1, j);
        if (col_gap < -tol || (strict && !(col_gap > tol))) ++check.violations;
      }
    }
  }
  check.is_r = (check.violations == 0);
  return check;
}

RMatrixCheck is_r_matrix(const SimilarityMatrix& a, bool strict, double tol) {
  return is_r_matrix(a.matrix(), strict, tol);
}

bool is_q_matrix(const Matrix& a, double tol) {
  for (int j = 0; j < a.cols(); ++j) {
    bool falling = false;
    for (int i = 1; i < a.rows(); ++i) {
      const double step = a(i, j) - a(i - 1, j);
      if (step < -tol) falling = true;
      if (step > tol && falling) return false;
    }
  }
  return true;
}

bool is_p_matrix(const Matrix& a) {
  for (int j = 0; j < a.cols(); ++j) {
    int state = 0;  // 0: before ones, 1: inside, 2: after
    for (int i = 0; i < a.rows(); ++i) {
      const double v = a(i, j);
      if (v != 0.0 && v != 1.0) {
        throw std::invalid_argument("is_p_matrix: entries must be 0 or 1");
      }
      if (v == 1.0) {
        if (state == 2) return false;
        state = 1;
      } else if (state == 1) {
        state = 2;
      }
    }
  }
  return true;
}

Matrix circular_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("circular_product: inner dimensions disagree");
  }
  Matrix out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) s += std::min(a(i, k), b(k, j));
      out(i, j) = s;
    }
  }
  return out;
}

CutDecomposition cut_decomposition(const Vector& a) {
  const int n = static_cast<int>(a.size());
  if (n > 0 && a.minCoeff() < 0.0) {
    throw std::invalid_argument("cut_decomposition: entries must be nonnegative");
  }
  CutDecomposition d;
  Vector rest = a;
  while (true) {
    const double peak = rest.size() > 0 ? rest.maxCoeff() : 0.0;
    if (peak <= 0.0) break;
    // Full maximal contiguous argmax interval.
    int lo = 0;
    while (rest(lo) != peak) ++lo;
    int hi = lo;
    while (hi + 1 < n && rest(hi + 1) == peak) ++hi;
    for (int i = hi + 1; i < n; ++i) {
      if (rest(i) == peak) {
        throw std::invalid_argument("cut_decomposition: vector is not unimodal");
      }
    }
    double outside = 0.0;
    for (int i = 0; i < n; ++i) {
      if (i < lo || i > hi) outside = std::max(outside, rest(i));
    }
    const double weight = peak - outside;
    d.terms.push_back(CutMatrix{lo, hi, weight});
    for (int i = lo; i <= hi; ++i) rest(i) -= weight;
  }
  if (n > 0) {
    d.residual_norm = (d.sum(n) - circular_product(a, a.transpose())).norm();
  }
  return d;
}

SimilarityMatrix square_similarity(const Matrix& c) {
  if (c.size() > 0 && c.minCoeff() < 0.0) {
    throw std::invalid_argument("square_similarity: entries must be nonnegative");
  }
  return SimilarityMatrix(circular_product(c, c.transpose()));
}

}  // namespace seriate
