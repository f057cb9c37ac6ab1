#include "seriate/projection.hpp"

#include <algorithm>
#include <cmath>

#include "seriate/errors.hpp"

namespace seriate {

DoublyStochasticMatrix::DoublyStochasticMatrix(Matrix entries, double tol)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("DoublyStochasticMatrix: matrix must be square");
  }
  if (deviation(entries_) > tol) {
    throw std::invalid_argument("DoublyStochasticMatrix: row/column sums or sign out of tolerance");
  }
}

double DoublyStochasticMatrix::deviation(const Matrix& m) {
  double dev = (m.rowwise().sum().array() - 1.0).abs().maxCoeff();
  dev = std::max(dev, (m.colwise().sum().array() - 1.0).abs().maxCoeff());
  dev = std::max(dev, std::max(0.0, -m.minCoeff()));
  return dev;
}

ProjectionResult project_doubly_stochastic(const Matrix& pi0, const ConstraintSet& constraints,
                                           const Vector& g, const ProjectionOptions& opts,
                                           const ProjectionDuals* warm_start) {
  const int n = static_cast<int>(pi0.rows());
  if (pi0.cols() != n) throw std::invalid_argument("project: pi0 must be square");
  if (constraints.n() != n || g.size() != n) {
    throw std::invalid_argument("project: constraint/weight dimensions disagree");
  }
  const Matrix& d = constraints.d();
  const Vector& delta = constraints.delta();
  const int nc = static_cast<int>(d.cols());
  for (int c = 0; c < nc; ++c) {
    if (d.col(c).norm() < 1e-12) {
      throw RankDeficientError("project: constraint column " + std::to_string(c) + " is zero");
    }
  }

  const Vector ones = Vector::Ones(n);
  const double g_sum = g.sum();
  const double g_sq = g.squaredNorm();
  const Vector pi0_rows = pi0 * ones;
  const Vector pi0_cols = pi0.transpose() * ones;
  const Vector d_colsums = d.transpose() * ones;
  const Vector dt_pi0_g = d.transpose() * (pi0 * g) + delta;

  // Curvature of the z block: hess = g_sq * D'D.
  const Matrix hess = g_sq * (d.transpose() * d);

  ProjectionDuals duals;
  if (warm_start && warm_start->z_mat.rows() == n && warm_start->z.size() == nc) {
    duals = *warm_start;
  } else {
    duals.z_mat = Matrix::Zero(n, n);
    duals.x = Vector::Zero(n);
    duals.y = Vector::Zero(n);
    duals.z = Vector::Zero(nc);
  }

  ProjectionResult result;
  Matrix w(n, n);
  Vector hz = hess * duals.z;

  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    const Matrix dzg = (d * duals.z) * g.transpose();

    // Multiplier of Pi >= 0: clipped unconstrained maximizer.
    duals.z_mat = (duals.x * ones.transpose() + ones * duals.y.transpose() + dzg - pi0).cwiseMax(0.0);

    // Row-sum block.
    duals.x = (pi0_rows - (duals.y.sum() + 1.0) * ones - (d * duals.z) * g_sum +
               duals.z_mat * ones) /
              static_cast<double>(n);

    // Column-sum block.
    duals.y = (pi0_cols - (duals.x.sum() + 1.0) * ones - g * duals.z.dot(d_colsums) +
               duals.z_mat.transpose() * ones) /
              static_cast<double>(n);

    // Ordering-constraint block: clipped cyclic Newton on the quadratic
    //   -0.5 z' hess z + z' b,  z >= 0.
    const Vector v = pi0 * g - g_sum * duals.x - duals.y.dot(g) * ones + duals.z_mat * g;
    const Vector b = d.transpose() * v + delta;
    hz = hess * duals.z;
    for (int pass = 0; pass < 16; ++pass) {
      double largest = 0.0;
      for (int c = 0; c < nc; ++c) {
        const double znew = std::max(0.0, duals.z(c) + (b(c) - hz(c)) / hess(c, c));
        const double step = znew - duals.z(c);
        if (step != 0.0) {
          hz += hess.col(c) * step;
          duals.z(c) = znew;
          largest = std::max(largest, std::abs(step));
        }
      }
      if (largest <= 1e-4 * opts.tolerance * (1.0 + duals.z.cwiseAbs().maxCoeff())) break;
    }

    // Primal from stationarity and the certificate values.
    w = duals.x * ones.transpose() + ones * duals.y.transpose() +
        (d * duals.z) * g.transpose() - duals.z_mat;
    result.pi = pi0 - w;
    const double primal = 0.5 * w.squaredNorm();
    const double dual = -primal - duals.z_mat.cwiseProduct(pi0).sum() +
                        duals.x.dot(pi0_rows - ones) + duals.y.dot(pi0_cols - ones) +
                        duals.z.dot(dt_pi0_g);
    result.gap = std::abs(primal - dual) / std::max(1.0, primal);
    double feas = DoublyStochasticMatrix::deviation(result.pi);
    if (nc > 0) {
      feas = std::max(feas, (d.transpose() * (result.pi * g) + delta).maxCoeff());
    }
    result.feasibility = feas;
    result.sweeps = sweep;
    if (result.gap <= opts.tolerance && feas <= opts.feasibility_tolerance) {
      result.converged = true;
      break;
    }
  }
  result.duals = duals;
  return result;
}

}  // namespace seriate
