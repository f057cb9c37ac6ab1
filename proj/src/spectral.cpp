#include "seriate/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "seriate/errors.hpp"

namespace seriate {

namespace {

void project_out_ones(Vector& v) {
  v.array() -= v.mean();
}

double power_iteration_lmax(const Matrix& l, int iters) {
  const int n = static_cast<int>(l.rows());
  Vector v = Vector::Ones(n);
  for (int i = 0; i < n; ++i) v(i) += 0.5 * std::cos(1.0 + i);  // deterministic, non-degenerate
  v.normalize();
  double theta = 0.0;
  for (int k = 0; k < iters; ++k) {
    Vector w = l * v;
    theta = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
  }
  return std::max(theta, (l * v).norm());
}

FiedlerResult fiedler_dense(const Matrix& l, const FiedlerOptions&) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(l);
  if (eig.info() != Eigen::Success) {
    throw ConvergenceError("fiedler: dense eigendecomposition failed");
  }
  FiedlerResult r;
  r.method = FiedlerMethod::dense;
  r.value = eig.eigenvalues()(1);
  r.vector = eig.eigenvectors().col(1);
  const int n = static_cast<int>(l.rows());
  const double scale = std::max(1.0, eig.eigenvalues()(n - 1));
  r.multiplicity_warning = (n > 2) && (eig.eigenvalues()(2) - r.value <= 1e-10 * scale);
  return r;
}

// Lanczos with full reorthogonalization on M = shift*I - L, restricted to the
// complement of the all-ones vector. The top eigenpair of M there corresponds
// to the Fiedler pair of L.
FiedlerResult fiedler_iterative(const Matrix& l, const FiedlerOptions& opts) {
  const int n = static_cast<int>(l.rows());
  const double shift = power_iteration_lmax(l, 60) * (1.0 + 1e-6) + 1e-12;
  const int max_basis = std::min(n - 1, 250);

  std::vector<Vector> basis;
  std::vector<double> alpha, beta;
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = std::sin(0.7 * (i + 1)) + 0.3 * std::cos(2.3 * i);
  project_out_ones(v);
  v.normalize();

  FiedlerResult best;
  best.method = FiedlerMethod::iterative;
  int matvecs = 0;
  Vector prev = Vector::Zero(n);

  auto ritz_extract = [&](FiedlerResult& out) -> double {
    const int m = static_cast<int>(alpha.size());
    Matrix t = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(t);
    const int top = m - 1;
    Vector y = eig.eigenvectors().col(top);
    Vector ritz = Vector::Zero(n);
    for (int i = 0; i < m; ++i) ritz += y(i) * basis[i];
    project_out_ones(ritz);
    ritz.normalize();
    out.value = shift - eig.eigenvalues()(top);
    out.vector = ritz;
    out.multiplicity_warning =
        (m > 1) && (eig.eigenvalues()(top) - eig.eigenvalues()(top - 1) <= 1e-10 * shift);
    return (l * ritz - out.value * ritz).norm();
  };

  while (matvecs < opts.max_iterations) {
    basis.push_back(v);
    Vector w = shift * v - l * v;
    ++matvecs;
    const double a = v.dot(w);
    alpha.push_back(a);
    w -= a * v;
    if (!beta.empty()) w -= beta.back() * prev;
    // Full reorthogonalization keeps the basis clean against the deflated
    // ones-direction and against round-off in long runs.
    project_out_ones(w);
    for (const Vector& b : basis) w -= b.dot(w) * b;
    const double bnorm = w.norm();

    if (static_cast<int>(alpha.size()) >= 2) {
      const double resid = ritz_extract(best);
      if (resid <= opts.tolerance * std::max(1.0, shift)) return best;
    }
    if (bnorm <= 1e-14 * std::max(1.0, shift)) {
      // Invariant subspace found; the Ritz pair is exact.
      if (!alpha.empty()) {
        ritz_extract(best);
        return best;
      }
      throw ConvergenceError("fiedler: Lanczos broke down before extracting a pair");
    }
    beta.push_back(bnorm);
    prev = basis.back();
    v = w / bnorm;

    if (static_cast<int>(basis.size()) >= max_basis) {
      // Restart from the current best Ritz vector.
      const double resid = ritz_extract(best);
      if (resid <= 1e-6 * std::max(1.0, shift)) return best;
      v = best.vector;
      basis.clear();
      alpha.clear();
      beta.clear();
      prev.setZero();
    }
  }
  throw ConvergenceError("fiedler: iterative solver exceeded its iteration cap");
}

}  // namespace

FiedlerResult fiedler(const SimilarityMatrix& a, const FiedlerOptions& opts) {
  const Matrix l = laplacian(a);
  const int n = a.size();
  if (n < 2) throw std::invalid_argument("fiedler: need at least two elements");

  FiedlerMethod method = opts.method;
  if (method == FiedlerMethod::automatic) {
    method = (n <= opts.dense_threshold) ? FiedlerMethod::dense : FiedlerMethod::iterative;
  }
  FiedlerResult r = (method == FiedlerMethod::dense) ? fiedler_dense(l, opts)
                                                     : fiedler_iterative(l, opts);
  if (r.value < opts.disconnect_tolerance) {
    throw DisconnectedGraphError("fiedler: similarity graph is disconnected");
  }
  project_out_ones(r.vector);
  r.vector.normalize();
  return r;
}

SpectralOrder spectral_order(const SimilarityMatrix& a, const FiedlerOptions& opts) {
  SpectralOrder out;
  out.fiedler = fiedler(a, opts);
  Vector v = out.fiedler.vector;
  for (int i = 0; i < v.size(); ++i) {
    if (v(i) != 0.0) {
      if (v(i) > 0.0) v = -v;
      break;
    }
  }
  out.fiedler.vector = v;
  out.order = argsort(v);
  // Repeated entries make the sorted order ambiguous up to the stable
  // tie-break; surface that to the caller.
  Vector sorted = v;
  std::sort(sorted.data(), sorted.data() + sorted.size());
  const double span = std::max(1e-300, sorted(sorted.size() - 1) - sorted(0));
  for (int i = 1; i < sorted.size(); ++i) {
    if (sorted(i) - sorted(i - 1) <= 1e-12 * span) {
      out.fiedler.multiplicity_warning = true;
      break;
    }
  }
  return out;
}

}  // namespace seriate
