#include "support/oracles.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sbmr/rng.hpp"

namespace sbmr::testing {

double brute_force_strong_delta(const Partition& p, const Partition& planted) {
  const int k = planted.k();
  const int N = planted.vertex_count();
  std::vector<std::vector<std::int64_t>> overlap(k, std::vector<std::int64_t>(k, 0));
  for (int v = 0; v < N; ++v) ++overlap[planted.label(v)][p.label(v)];

  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t best = 0;
  do {
    std::int64_t total = 0;
    for (int i = 0; i < k; ++i) total += overlap[i][perm[i]];
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return 1.0 - static_cast<double>(best) / N;
}

namespace {

std::int64_t best_weak_overlap(const std::vector<std::vector<std::int64_t>>& overlap, int i,
                               std::vector<char>& used) {
  if (i == static_cast<int>(overlap.size())) return 0;
  // Leave planted cluster i unmatched...
  std::int64_t best = best_weak_overlap(overlap, i + 1, used);
  // ...or match it to any unused candidate.
  for (int j = 0; j < static_cast<int>(overlap[i].size()); ++j) {
    if (used[j]) continue;
    used[j] = 1;
    best = std::max(best, overlap[i][j] + best_weak_overlap(overlap, i + 1, used));
    used[j] = 0;
  }
  return best;
}

}  // namespace

double brute_force_weak_delta(const WeakPartition& w, const Partition& planted) {
  const int k = planted.k();
  const int kp = w.cluster_count();
  const int N = planted.vertex_count();
  std::vector<std::vector<std::int64_t>> overlap(k, std::vector<std::int64_t>(kp, 0));
  for (int j = 0; j < kp; ++j)
    for (int v : w.clusters[j]) ++overlap[planted.label(v)][j];
  std::vector<char> used(kp, 0);
  return 1.0 - static_cast<double>(best_weak_overlap(overlap, 0, used)) / N;
}

namespace {

double spread_sum(const Eigen::MatrixXd& x) {
  const double n = static_cast<double>(x.rows());
  return n * x.rowwise().squaredNorm().sum() - x.colwise().sum().squaredNorm();
}

void normalize_rows(Eigen::MatrixXd& x) {
  for (int u = 0; u < x.rows(); ++u) x.row(u) /= x.row(u).norm();
}

}  // namespace

Embedding random_feasible_embedding(int n, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("random_feasible_embedding: k >= 2");
  const int N = n * k;
  const int r = 3 * k;  // coordinate block {3i, 3i+1, 3i+2} belongs to cluster i
  const double target = static_cast<double>(N) * N * (1.0 - 1.0 / k);
  Rng rng(seed);

  // Concentrated configuration: shared positive rows, spread below target.
  Eigen::MatrixXd low(N, r);
  for (int u = 0; u < N; ++u)
    for (int j = 0; j < r; ++j) low(u, j) = 0.5 + std::abs(rng.next_normal());
  normalize_rows(low);

  // Block-orthogonal configuration: within-cluster scatter on owned
  // coordinates only, spread above target.
  Eigen::MatrixXd high = Eigen::MatrixXd::Zero(N, r);
  const double scatter = 0.5 + rng.next_double();
  for (int u = 0; u < N; ++u) {
    const int c = u / n;
    high(u, 3 * c) = 1.0;
    high(u, 3 * c + 1) = scatter * std::abs(rng.next_normal());
    high(u, 3 * c + 2) = scatter * std::abs(rng.next_normal());
  }
  normalize_rows(high);

  auto blend = [&](double theta) {
    Eigen::MatrixXd x = (1.0 - theta) * low + theta * high;
    normalize_rows(x);
    return x;
  };

  double lo = 0.0, hi = 1.0;
  if (spread_sum(blend(lo)) > target || spread_sum(blend(hi)) < target)
    throw std::logic_error("random_feasible_embedding: bisection bracket failed");
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (spread_sum(blend(mid)) < target ? lo : hi) = mid;
  }
  return Embedding{blend(0.5 * (lo + hi))};
}

WeakPartition random_weak_partition(int n, int k, std::uint64_t seed) {
  const int N = n * k;
  Rng rng(seed);
  std::vector<int> order(N);
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i + 1 < N; ++i) {
    const auto j = i + static_cast<int>(rng.next_below(N - i));
    std::swap(order[i], order[j]);
  }
  WeakPartition w;
  int at = 0;
  while (at < N) {
    const int size = 1 + static_cast<int>(rng.next_below(std::min(n, N - at)));
    std::vector<int> cluster(order.begin() + at, order.begin() + at + size);
    std::sort(cluster.begin(), cluster.end());
    w.clusters.push_back(std::move(cluster));
    at += size;
  }
  return w;
}

Partition random_balanced_partition(int n, int k, std::uint64_t seed) {
  const int N = n * k;
  Rng rng(seed);
  std::vector<int> order(N);
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i + 1 < N; ++i) {
    const auto j = i + static_cast<int>(rng.next_below(N - i));
    std::swap(order[i], order[j]);
  }
  std::vector<int> labels(N);
  for (int i = 0; i < N; ++i) labels[order[i]] = i / n;
  return Partition(std::move(labels), k);
}

double admm_reference_objective(const Graph& g, int k, int iterations, double step) {
  const int N = g.vertex_count();
  const double total_target = static_cast<double>(N) * N / k;  // sum of all entries
  const double offdiag_target = total_target - N;

  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(N, N);
  for (const Edge& e : g.edges()) {
    adj(e.u, e.v) += static_cast<double>(e.mult);
    adj(e.v, e.u) += static_cast<double>(e.mult);
  }
  const Eigen::MatrixXd C = -0.5 * adj;

  // Dykstra projection onto {diag = 1} ∩ {sum offdiag = T} ∩ {entries >= 0}.
  auto project_affine_box = [&](Eigen::MatrixXd m) {
    Eigen::MatrixXd p1 = Eigen::MatrixXd::Zero(N, N);
    Eigen::MatrixXd p2 = Eigen::MatrixXd::Zero(N, N);
    Eigen::MatrixXd p3 = Eigen::MatrixXd::Zero(N, N);
    const double offdiag_count = static_cast<double>(N) * (N - 1);
    for (int pass = 0; pass < 60; ++pass) {
      Eigen::MatrixXd y = m + p1;
      Eigen::MatrixXd next = y;
      next.diagonal().setConstant(1.0);
      p1 = y - next;
      m = next;

      y = m + p2;
      next = y;
      const double shift = (offdiag_target - (y.sum() - y.trace())) / offdiag_count;
      next.array() += shift;
      next.diagonal() = y.diagonal();
      p2 = y - next;
      m = next;

      y = m + p3;
      next = y.cwiseMax(0.0);
      p3 = y - next;
      m = next;
    }
    return m;
  };

  auto project_psd = [&](const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (m + m.transpose()));
    Eigen::VectorXd values = eig.eigenvalues().cwiseMax(0.0);
    return Eigen::MatrixXd(eig.eigenvectors() * values.asDiagonal() *
                           eig.eigenvectors().transpose());
  };

  // Start from the fully mixed feasible point.
  Eigen::MatrixXd z = Eigen::MatrixXd::Constant(N, N, (total_target - N) / (N * N - N));
  z.diagonal().setConstant(1.0);
  Eigen::MatrixXd y = z;
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(N, N);

  for (int t = 0; t < iterations; ++t) {
    z = project_affine_box(y - u - C / step);
    y = project_psd(z + u);
    u += z - y;
  }

  const double objective = static_cast<double>(g.edge_count()) + (C.array() * z.array()).sum();
  return objective;
}

}  // namespace sbmr::testing
