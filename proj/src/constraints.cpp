#include "seriate/constraints.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace seriate {

ConstraintSet::ConstraintSet(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("ConstraintSet: need n >= 2");
  d_ = Matrix::Zero(n, 1);
  d_(0, 0) = 1.0;
  d_(n - 1, 0) = -1.0;
  delta_ = Vector::Constant(1, 1.0);
}

void ConstraintSet::push_column(const Vector& col, double offset) {
  for (int c = 0; c < columns(); ++c) {
    if (delta_(c) == offset && (d_.col(c) - col).cwiseAbs().maxCoeff() == 0.0) {
      return;  // exact duplicate
    }
  }
  d_.conservativeResize(Eigen::NoChange, columns() + 1);
  d_.col(columns() - 1) = col;
  delta_.conservativeResize(columns());
  delta_(columns() - 1) = offset;
}

void ConstraintSet::add(const ConstraintSpec& spec) {
  if (spec.i < 0 || spec.i >= n_ || spec.j < 0 || spec.j >= n_ || spec.i == spec.j) {
    throw std::invalid_argument("ConstraintSet: constraint index out of range");
  }
  Vector col = Vector::Zero(n_);
  switch (spec.kind) {
    case ConstraintSpec::Kind::order:
      // position(i) - position(j) + 1 <= 0
      col(spec.i) = 1.0;
      col(spec.j) = -1.0;
      push_column(col, 1.0);
      break;
    case ConstraintSpec::Kind::distance: {
      if (spec.a > spec.b) {
        throw std::invalid_argument("ConstraintSet: distance bounds need a <= b");
      }
      // position(i) - position(j) <= b
      col(spec.i) = 1.0;
      col(spec.j) = -1.0;
      push_column(col, -spec.b);
      // position(j) - position(i) <= -a
      push_column(-col, spec.a);
      break;
    }
  }
  specs_.push_back(spec);
}

Vector ConstraintSet::residual(const Vector& position_weights) const {
  if (position_weights.size() != n_) {
    throw std::invalid_argument("ConstraintSet: weight vector dimension mismatch");
  }
  return d_.transpose() * position_weights + delta_;
}

bool ConstraintSet::satisfied_by(const Permutation& p, double tol) const {
  if (p.size() != n_) throw std::invalid_argument("ConstraintSet: permutation size mismatch");
  const std::vector<int> ranks = p.ranks();
  Vector pos(n_);
  for (int e = 0; e < n_; ++e) pos(e) = static_cast<double>(ranks[e] + 1);
  return residual(pos).maxCoeff() <= tol;
}

ConstraintSet build_constraints(int n, const std::vector<ConstraintSpec>& specs) {
  ConstraintSet set(n);
  for (const ConstraintSpec& s : specs) set.add(s);
  return set;
}

ConstraintSet reduce_redundant_orders(const ConstraintSet& constraints) {
  const int n = constraints.n();
  std::vector<std::vector<char>> edge(n, std::vector<char>(n, 0));
  std::vector<ConstraintSpec> distance_specs;
  for (const ConstraintSpec& s : constraints.specs()) {
    if (s.kind == ConstraintSpec::Kind::order) {
      edge[s.i][s.j] = 1;
    } else {
      distance_specs.push_back(s);
    }
  }

  // Kahn's algorithm: bail out to the raw set when the digraph has a cycle
  // (the implication argument needs consistent orders).
  std::vector<int> indegree(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) indegree[j] += edge[i][j];
  }
  std::vector<int> topo;
  std::vector<int> frontier;
  for (int v = 0; v < n; ++v) {
    if (indegree[v] == 0) frontier.push_back(v);
  }
  while (!frontier.empty()) {
    const int v = frontier.back();
    frontier.pop_back();
    topo.push_back(v);
    for (int w = 0; w < n; ++w) {
      if (edge[v][w] && --indegree[w] == 0) frontier.push_back(w);
    }
  }
  if (static_cast<int>(topo.size()) != n) return constraints;

  // reach[u][v]: a path u -> v of length >= 2 exists. Processing in reverse
  // topological order keeps each update O(n) per edge.
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const int u = *it;
    for (int v = 0; v < n; ++v) {
      if (!edge[u][v]) continue;
      for (int w = 0; w < n; ++w) {
        if (edge[v][w] || reach[v][w]) reach[u][w] = 1;
      }
    }
  }

  std::vector<ConstraintSpec> kept;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (edge[i][j] && !reach[i][j]) kept.push_back(ConstraintSpec::make_order(i, j));
    }
  }
  kept.insert(kept.end(), distance_specs.begin(), distance_specs.end());
  return build_constraints(n, kept);
}

std::vector<ConstraintSpec> parse_constraints(std::istream& in) {
  std::vector<ConstraintSpec> specs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("constraint file line " + std::to_string(lineno) + ": " + why);
    };
    if (kind == "ord") {
      int i, j;
      if (!(ls >> i >> j)) fail("expected `ord i j`");
      specs.push_back(ConstraintSpec::make_order(i - 1, j - 1));
    } else if (kind == "dist") {
      int i, j;
      double a, b;
      if (!(ls >> i >> j >> a >> b)) fail("expected `dist i j a b`");
      specs.push_back(ConstraintSpec::make_distance(i - 1, j - 1, a, b));
    } else {
      fail("unknown constraint kind `" + kind + "`");
    }
    std::string extra;
    if (ls >> extra) fail("trailing tokens");
  }
  return specs;
}

std::vector<ConstraintSpec> load_constraints(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open constraint file: " + path);
  return parse_constraints(in);
}

void save_constraints(const std::string& path, const std::vector<ConstraintSpec>& specs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write constraint file: " + path);
  for (const ConstraintSpec& s : specs) {
    if (s.kind == ConstraintSpec::Kind::order) {
      out << "ord " << s.i + 1 << ' ' << s.j + 1 << '\n';
    } else {
      out << "dist " << s.i + 1 << ' ' << s.j + 1 << ' ' << s.a << ' ' << s.b << '\n';
    }
  }
}

}  // namespace seriate
