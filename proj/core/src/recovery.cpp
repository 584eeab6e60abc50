#include "sbmr/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sbmr/sdp.hpp"

namespace sbmr {

void CoreParams::validate() const {
  if (!(rho > 0.0 && rho < 1.0 / 3.0))
    throw std::invalid_argument("CoreParams: rho must lie in (0, 1/3)");
}

WeakPartition greedy_recover(const Embedding& e, int n, double rho) {
  if (n < 1) throw std::invalid_argument("greedy_recover: n must be >= 1");
  const int N = e.vertex_count();
  const double limit2 = 4.0 * rho * rho;  // ||u - v|| < 2 rho, squared

  const Eigen::VectorXd norms = e.vectors.rowwise().squaredNorm();
  const Eigen::MatrixXd gram = e.vectors * e.vectors.transpose();

  // Auxiliary adjacency including self-loops.
  std::vector<std::vector<char>> aux(N, std::vector<char>(N, 0));
  std::vector<int> degree(N, 0);
  for (int u = 0; u < N; ++u) {
    aux[u][u] = 1;
    degree[u] = 1;
  }
  for (int u = 0; u < N; ++u)
    for (int v = u + 1; v < N; ++v) {
      const double d2 = norms(u) + norms(v) - 2.0 * gram(u, v);
      if (d2 < limit2) {
        aux[u][v] = aux[v][u] = 1;
        ++degree[u];
        ++degree[v];
      }
    }

  WeakPartition out;
  std::vector<char> alive(N, 1);
  int remaining = N;
  while (remaining > 0) {
    int pick = -1;
    for (int u = 0; u < N; ++u)
      if (alive[u] && (pick < 0 || degree[u] > degree[pick])) pick = u;

    std::vector<int> cluster;
    for (int v = 0; v < N; ++v)
      if (alive[v] && aux[pick][v]) cluster.push_back(v);
    if (static_cast<int>(cluster.size()) > n) cluster.resize(n);  // ascending ids: drop highest

    for (int v : cluster) {
      alive[v] = 0;
      --remaining;
      for (int w = 0; w < N; ++w)
        if (alive[w] && aux[v][w]) --degree[w];
    }
    out.clusters.push_back(std::move(cluster));
  }
  return out;
}

Partition weak_to_strong(const WeakPartition& w, int n, int k) {
  const int N = w.vertex_count();
  if (N != n * k) throw std::invalid_argument("weak_to_strong: vertex count != n*k");
  for (const auto& c : w.clusters)
    if (static_cast<int>(c.size()) > n)
      throw std::invalid_argument("weak_to_strong: cluster larger than n");

  // k largest clusters, ties by lower creation index.
  std::vector<int> order(w.clusters.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return w.clusters[x].size() > w.clusters[y].size();
  });
  std::vector<int> kept(order.begin(), order.begin() + k);
  std::sort(kept.begin(), kept.end());  // output clusters keep creation order

  std::vector<int> labels(N, -1);
  std::vector<int> sizes(k, 0);
  for (int i = 0; i < k; ++i) {
    for (int v : w.clusters[kept[i]]) labels[v] = i;
    sizes[i] = static_cast<int>(w.clusters[kept[i]].size());
  }

  int fill = 0;  // lowest-index deficient cluster
  for (int v = 0; v < N; ++v) {
    if (labels[v] >= 0) continue;
    while (sizes[fill] == n) ++fill;
    labels[v] = fill;
    ++sizes[fill];
  }
  return Partition(std::move(labels), k);
}

CoreReport compute_cores(const Embedding& e, const Partition& planted, const CoreParams& p) {
  p.validate();
  const int k = planted.k();
  const int N = planted.vertex_count();
  const int n = N / k;
  const double delta_cap = p.delta_cap();

  const SdpDiagnostics diag = compute_diagnostics(e, planted);
  const auto clusters = planted.clusters();

  CoreReport report;
  report.cores.resize(k);
  report.core_sizes.assign(k, 0);
  for (int i = 0; i < k; ++i) {
    for (int u : clusters[i])
      if (diag.radii[u] < p.rho) report.cores[i].push_back(u);
    report.core_sizes[i] = static_cast<int>(report.cores[i].size());
    report.remote_count += static_cast<int>(clusters[i].size()) - report.core_sizes[i];
  }
  report.lemma13_bound = diag.alpha / (p.rho * p.rho) * static_cast<double>(k) * n;

  report.center_distances = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const double d = (diag.centers.row(i) - diag.centers.row(j)).norm();
      report.center_distances(i, j) = report.center_distances(j, i) = d;
      if (d >= delta_cap) report.separated_pairs.emplace_back(i, j);
    }

  // Lemma-14 construction: drop one cluster per pair with <W_i, W_j> >= mu
  // (mu = alpha/delta), then drop clusters with alpha_i > 2 alpha / delta.
  const double delta = 6.0 * diag.alpha / (2.0 - delta_cap * delta_cap);
  const double mu = delta > 0 ? diag.alpha / delta
                              : std::numeric_limits<double>::infinity();
  std::vector<char> dropped(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      if (dropped[i] || dropped[j]) continue;
      if (diag.centers.row(i).dot(diag.centers.row(j)) >= mu) dropped[j] = 1;
    }
  const double alpha_limit =
      delta > 0 ? 2.0 * diag.alpha / delta : std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i)
    if (!dropped[i] && diag.alpha_i[i] <= alpha_limit) report.well_separated_set.push_back(i);
  report.lemma14_bound = (1.0 - delta) * static_cast<double>(k);
  return report;
}

}  // namespace sbmr
