#include "seriate/relax.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>

#include "seriate/assignment.hpp"
#include "seriate/errors.hpp"
#include "seriate/rng.hpp"

namespace seriate {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Matrix center_rows(const Matrix& pi) {
  // P * Pi with P = I - 11'/n: subtract each column's mean.
  return pi.rowwise() - pi.colwise().mean();
}

struct Model {
  Matrix lap;
  Matrix gram;  // Y Y'
  double mu = 0.0;
  int p = 1;

  double objective(const Matrix& pi) const {
    const Matrix lpg = lap * pi * gram;
    const double data = pi.cwiseProduct(lpg).sum();
    const Matrix centered = center_rows(pi);
    return (data - mu * centered.squaredNorm()) / static_cast<double>(p);
  }

  Matrix gradient(const Matrix& pi) const {
    return (2.0 / static_cast<double>(p)) * (lap * pi * gram - mu * center_rows(pi));
  }

  // Curvature along a direction; exact for this quadratic.
  double curvature(const Matrix& dir) const {
    const double data = dir.cwiseProduct(lap * dir * gram).sum();
    return 2.0 * (data - mu * center_rows(dir).squaredNorm()) / static_cast<double>(p);
  }

  double lipschitz() const {
    Eigen::SelfAdjointEigenSolver<Matrix> el(lap);
    Eigen::SelfAdjointEigenSolver<Matrix> eg(gram);
    const int n = static_cast<int>(lap.rows());
    return 2.0 / p * el.eigenvalues()(n - 1) * eg.eigenvalues()(n - 1) + 1e-12;
  }
};

Model make_model(const Matrix& lap, const EnsembleWeights& y, const SolverConfig& cfg,
                 SolverReport& report) {
  if (cfg.mu_fraction < 0.0 || cfg.mu_fraction > 1.0 + 1e-12) {
    throw InfeasibleMuError("mu_fraction outside [0, 1] breaks the convexity bound");
  }
  Model m;
  m.lap = lap;
  m.gram = y.y * y.y.transpose();
  m.p = y.p();
  report.mu_upper_bound = mu_bound(lap, y);
  m.mu = cfg.mu_fraction * report.mu_upper_bound;
  report.mu = m.mu;
  report.seed = cfg.seed;
  return m;
}

}  // namespace

EnsembleWeights build_y(int n, int p, double noise_scale, std::uint64_t seed) {
  if (p < 1) throw std::invalid_argument("build_y: need p >= 1");
  if (noise_scale < 0.0) throw std::invalid_argument("build_y: noise_scale must be >= 0");
  EnsembleWeights w;
  w.noise_scale = noise_scale;
  w.seed = seed;
  w.y.resize(n, p);
  Rng rng(seed);
  const Vector g = ranking_weights(n);
  for (int c = 0; c < p; ++c) {
    while (true) {
      Vector col = g;
      for (int i = 0; i < n; ++i) col(i) += noise_scale * rng.uniform(-1.0, 1.0);
      std::sort(col.data(), col.data() + n);
      bool strict = true;
      for (int i = 1; i < n && strict; ++i) strict = col(i) > col(i - 1);
      if (strict) {
        w.y.col(c) = col;
        break;
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(w.y * w.y.transpose());
  w.gram_min_eigenvalue = std::max(0.0, eig.eigenvalues()(0));
  return w;
}

double mu_bound(const Matrix& laplacian_a, const EnsembleWeights& y) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(laplacian_a);
  const double lambda2 = std::max(0.0, eig.eigenvalues()(1));
  return lambda2 * y.gram_min_eigenvalue;
}

double relaxed_objective(const Matrix& pi, const Matrix& laplacian_a, const EnsembleWeights& y,
                         double mu) {
  Model m{laplacian_a, y.y * y.y.transpose(), mu, y.p()};
  return m.objective(pi);
}

Matrix relaxed_gradient(const Matrix& pi, const Matrix& laplacian_a, const EnsembleWeights& y,
                        double mu) {
  Model m{laplacian_a, y.y * y.y.transpose(), mu, y.p()};
  return m.gradient(pi);
}

namespace {

Matrix assignment_vertex(const Matrix& cost) {
  const int n = static_cast<int>(cost.rows());
  const std::vector<int> cols = solve_assignment(cost);
  Matrix x = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) x(i, cols[i]) = 1.0;
  return x;
}

// Exact linear minimization over the Birkhoff polytope intersected with the
// orientation half-space <normal, X> + 1 <= 0. Without that half-space the
// relaxation is degenerate: the objective is a homogeneous positive
// semidefinite quadratic, so the barycenter would be a zero-gradient global
// minimizer and the iteration could never leave it. A single half-space keeps
// the oracle exact: sweep the Lagrange multiplier of the constraint by
// bisection, each trial being one assignment solve, and blend the two facet
// vertices when the optimum sits on the boundary.
Matrix lmo_oriented_birkhoff(const Matrix& cost, const Matrix& normal) {
  const Matrix x0 = assignment_vertex(cost);
  const double h0 = normal.cwiseProduct(x0).sum() + 1.0;
  if (h0 <= 0.0) return x0;

  const double scale = std::max(1.0, cost.cwiseAbs().maxCoeff());
  double lo = 0.0, hi = 1.0;
  Matrix x_lo = x0, x_hi;
  double h_lo = h0, h_hi = 0.0;
  for (int grow = 0; grow < 90; ++grow) {
    x_hi = assignment_vertex(cost + hi * normal);
    h_hi = normal.cwiseProduct(x_hi).sum() + 1.0;
    if (h_hi <= 0.0) break;
    lo = hi;
    x_lo = x_hi;
    h_lo = h_hi;
    hi *= 4.0;
  }
  if (h_hi > 0.0) throw ConvergenceError("frank-wolfe oracle: half-space unreachable");

  for (int iter = 0; iter < 80 && hi - lo > 1e-13 * (scale + hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    const Matrix xm = assignment_vertex(cost + mid * normal);
    const double hm = normal.cwiseProduct(xm).sum() + 1.0;
    if (hm <= 0.0) {
      hi = mid;
      x_hi = xm;
      h_hi = hm;
    } else {
      lo = mid;
      x_lo = xm;
      h_lo = hm;
    }
  }
  // Complementary slackness: blend the straddling vertices onto the facet.
  const double theta = (h_hi == h_lo) ? 0.0 : h_hi / (h_hi - h_lo);
  return theta * x_lo + (1.0 - theta) * x_hi;
}

}  // namespace

SolverReport frank_wolfe_solve(const Matrix& laplacian_a, const EnsembleWeights& y,
                               const SolverConfig& cfg) {
  const auto start = Clock::now();
  SolverReport report;
  const Model model = make_model(laplacian_a, y, cfg, report);
  const int n = static_cast<int>(laplacian_a.rows());
  const Vector g = ranking_weights(n);
  Matrix normal = Matrix::Zero(n, n);
  normal.row(0) = g.transpose();
  normal.row(n - 1) = -g.transpose();

  // Feasible, deterministic start: the vertex most aligned with the
  // orientation constraint.
  Matrix pi = assignment_vertex(normal);
  report.objective_trace.push_back(model.objective(pi));
  const double gap_scale = std::max(1.0, std::abs(report.objective_trace.front()));

  for (int k = 0; k < cfg.max_iters; ++k) {
    const Matrix grad = model.gradient(pi);
    const Matrix s = lmo_oriented_birkhoff(grad, normal);

    const Matrix dir = s - pi;
    const double gap = -grad.cwiseProduct(dir).sum();
    report.gap_trace.push_back(gap);
    if (gap <= cfg.tolerance * gap_scale) {
      report.converged = true;
      break;
    }

    double step = 2.0 / (k + 2.0);
    if (cfg.exact_line_search) {
      const double slope = -gap;
      const double curv = model.curvature(dir);
      step = (curv > 0.0) ? std::clamp(-slope / curv, 0.0, 1.0) : 1.0;
    }
    pi += step * dir;
    report.objective_trace.push_back(model.objective(pi));
    report.iterations = k + 1;
  }
  report.solution = pi;
  report.final_gap = report.gap_trace.empty() ? 0.0 : report.gap_trace.back() / gap_scale;
  report.wall_time_s = seconds_since(start);
  return report;
}

SolverReport apg_solve(const Matrix& laplacian_a, const EnsembleWeights& y,
                       const ConstraintSet& raw_constraints, const SolverConfig& cfg) {
  const auto start = Clock::now();
  SolverReport report;
  const Model model = make_model(laplacian_a, y, cfg, report);
  const int n = static_cast<int>(laplacian_a.rows());
  // Same feasible set, far fewer dual coordinates on dense order samples.
  const ConstraintSet constraints = reduce_redundant_orders(raw_constraints);
  const Vector g = ranking_weights(n);
  const double lipschitz = model.lipschitz();
  const double step = 1.0 / std::max(lipschitz, 1e-300);

  ProjectionOptions popts;
  popts.tolerance = cfg.projection_tol;
  popts.feasibility_tolerance = cfg.projection_tol;
  popts.max_sweeps = cfg.projection_max_iters;

  ProjectionDuals duals;
  const ProjectionDuals* warm = nullptr;

  // Feasible start: project the barycenter.
  Matrix pi = Matrix::Constant(n, n, 1.0 / n);
  {
    ProjectionResult pr = project_doubly_stochastic(pi, constraints, g, popts, warm);
    pi = pr.pi;
    duals = pr.duals;
    warm = &duals;
  }

  Matrix momentum = pi;
  double t = 1.0;
  double f_pi = model.objective(pi);
  report.objective_trace.push_back(f_pi);
  const double f_scale = std::max(1.0, std::abs(f_pi));

  for (int k = 0; k < cfg.max_iters; ++k) {
    ProjectionResult pr =
        project_doubly_stochastic(momentum - step * model.gradient(momentum), constraints, g,
                                  popts, warm);
    duals = pr.duals;
    Matrix next = pr.pi;
    double f_next = model.objective(next);

    if (f_next > f_pi + 1e-14 * f_scale) {
      // Momentum overshot; restart from the last monotone iterate.
      t = 1.0;
      momentum = pi;
      pr = project_doubly_stochastic(momentum - step * model.gradient(momentum), constraints, g,
                                     popts, warm);
      duals = pr.duals;
      next = pr.pi;
      f_next = model.objective(next);
    }

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    momentum = next + ((t - 1.0) / t_next) * (next - pi);
    const double improvement = f_pi - f_next;
    pi = next;
    f_pi = f_next;
    t = t_next;
    report.objective_trace.push_back(f_pi);
    report.iterations = k + 1;
    if (k > 8 && improvement >= 0.0 && improvement <= cfg.tolerance * f_scale) {
      report.converged = true;
      break;
    }
  }

  // Stationarity residual of the projected gradient step.
  ProjectionResult pr =
      project_doubly_stochastic(pi - step * model.gradient(pi), constraints, g, popts, warm);
  report.final_gap = (pr.pi - pi).norm() / (1.0 + pi.norm());
  report.solution = pi;
  report.wall_time_s = seconds_since(start);
  return report;
}

}  // namespace seriate
