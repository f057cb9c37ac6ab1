#include "seriate/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace seriate {

namespace {

void check_bijection(const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  std::vector<char> seen(n, 0);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v]) {
      throw std::invalid_argument("Permutation: order is not a bijection on {0..n-1}");
    }
    seen[v] = 1;
  }
}

}  // namespace

Permutation::Permutation(std::vector<int> order) : order_(std::move(order)) {
  check_bijection(order_);
}

Permutation Permutation::identity(int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  return Permutation(std::move(order));
}

Permutation Permutation::random(int n, Rng& rng) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.uniform_int(0, i));
    std::swap(order[i], order[j]);
  }
  return Permutation(std::move(order));
}

Permutation Permutation::from_one_based(const std::vector<int>& order) {
  std::vector<int> shifted(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) shifted[i] = order[i] - 1;
  return Permutation(std::move(shifted));
}

std::vector<int> Permutation::one_based() const {
  std::vector<int> out(order_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) out[i] = order_[i] + 1;
  return out;
}

std::vector<int> Permutation::ranks() const {
  std::vector<int> r(order_.size());
  for (int pos = 0; pos < size(); ++pos) r[order_[pos]] = pos;
  return r;
}

Permutation Permutation::inverse() const { return Permutation(ranks()); }

Permutation Permutation::reversed() const {
  std::vector<int> rev(order_.rbegin(), order_.rend());
  return Permutation(std::move(rev));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (size() != other.size()) {
    throw std::invalid_argument("Permutation::compose: size mismatch");
  }
  std::vector<int> out(order_.size());
  for (int i = 0; i < size(); ++i) out[i] = order_[other.order_[i]];
  return Permutation(std::move(out));
}

Eigen::MatrixXd Permutation::matrix() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size(), size());
  for (int i = 0; i < size(); ++i) m(i, order_[i]) = 1.0;
  return m;
}

Eigen::MatrixXd Permutation::rank_matrix() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size(), size());
  for (int pos = 0; pos < size(); ++pos) m(order_[pos], pos) = 1.0;
  return m;
}

Eigen::MatrixXd apply_ordering(const Permutation& p, const Eigen::MatrixXd& a) {
  if (p.size() != a.rows() || a.rows() != a.cols()) {
    throw std::invalid_argument("apply_ordering: dimension mismatch");
  }
  const int n = p.size();
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b(i, j) = a(p(i), p(j));
  }
  return b;
}

Permutation argsort(const Eigen::VectorXd& values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values(a) < values(b); });
  return Permutation(std::move(order));
}

}  // namespace seriate
