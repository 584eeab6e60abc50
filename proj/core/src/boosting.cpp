#include "sbmr/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sbmr/rng.hpp"

namespace sbmr {

bool pair_in_second_half(std::uint64_t seed, int u, int v) {
  if (u > v) std::swap(u, v);
  const std::uint64_t key =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
      static_cast<std::uint32_t>(v);
  return mix_seed(seed, key) & 1;
}

EdgeSplit split_edges(const Graph& g, std::uint64_t seed) {
  if (!g.simple()) throw std::invalid_argument("split_edges: graph must be simple");
  EdgeSplit split;
  split.seed = seed;
  split.e1 = Graph(g.vertex_count(), true);
  split.e2 = Graph(g.vertex_count(), true);
  for (const Edge& e : g.edges())
    (pair_in_second_half(seed, e.u, e.v) ? split.e2 : split.e1).add_edge(e.u, e.v);
  return split;
}

Graph second_half_of(const EdgeSplit& split, const Graph& g) {
  Graph out(g.vertex_count(), true);
  for (const Edge& e : g.edges())
    if (pair_in_second_half(split.seed, e.u, e.v)) out.add_edge(e.u, e.v);
  return out;
}

std::pair<double, double> estimate_rates(const Graph& g, const Partition& base, int n, int k) {
  const double N = static_cast<double>(n) * k;
  std::int64_t within = 0;
  for (const Edge& e : g.edges())
    if (base.label(e.u) == base.label(e.v)) within += e.mult;
  // E[within] ~ N(n-1)/(2n) * a; E[total] = N(a + b(k-1))/2.
  const double degree_sum = 2.0 * static_cast<double>(g.edge_count()) / N;
  const double a_est =
      n > 1 ? 2.0 * static_cast<double>(within) / N * n / (n - 1) : degree_sum;
  const double b_est = k > 1 ? std::max(0.0, (degree_sum - a_est) / (k - 1)) : 0.0;
  return {a_est, b_est};
}

Partition boost_partition(const Graph& g2, const Partition& base, int n, int k,
                          const BoostConfig& cfg) {
  const int N = n * k;
  if (base.vertex_count() != N || base.k() != k)
    throw std::invalid_argument("boost_partition: base shape mismatch");
  if (!base.balanced(n))
    throw std::invalid_argument("boost_partition: base partition must be balanced");
  if (g2.vertex_count() != N)
    throw std::invalid_argument("boost_partition: graph shape mismatch");
  if (k == 1) return base;

  // Split each base cluster into halves of sizes floor(n/2) and
  // ceil(n/2), by vertex-id order or by a seeded shuffle. The shuffle's
  // stream is derived from the cluster's smallest member id, not its
  // index, to keep the split relabeling-equivariant.
  auto clusters = base.clusters();
  if (cfg.random_halves) {
    for (auto& members : clusters) {
      Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(members.front())));
      for (std::size_t i = 0; i + 1 < members.size(); ++i) {
        const std::size_t j = i + rng.next_below(members.size() - i);
        std::swap(members[i], members[j]);
      }
    }
  }
  // half_of[v]: 0 = lower half (votes against upper halves), 1 = upper.
  std::vector<char> half_of(N, 0);
  // Voting-half membership and its smallest id per (cluster, half).
  std::vector<std::vector<int>> min_id(2, std::vector<int>(k, N));
  for (int i = 0; i < k; ++i) {
    const int lower = n / 2;
    for (int pos = 0; pos < n; ++pos) {
      const int v = clusters[i][pos];
      half_of[v] = pos < lower ? 0 : 1;
      auto& best = min_id[half_of[v]][i];
      best = std::min(best, v);
    }
  }

  std::vector<std::vector<int>> neighbor_count(N, std::vector<int>(k, 0));
  for (const Edge& e : g2.edges()) {
    // A vertex's votes come only from the opposite half.
    if (half_of[e.u] != half_of[e.v]) {
      neighbor_count[e.u][base.label(e.v)] += static_cast<int>(e.mult);
      neighbor_count[e.v][base.label(e.u)] += static_cast<int>(e.mult);
    }
  }

  std::vector<std::vector<int>> voted(k);
  for (int v = 0; v < N; ++v) {
    const int own = base.label(v);
    int best = own;
    for (int j = 0; j < k; ++j) {
      if (j == best) continue;
      const int cmp = neighbor_count[v][j] - neighbor_count[v][best];
      if (cmp > 0) {
        best = j;
      } else if (cmp == 0 && best != own) {
        // Label-free tie-break: smallest vertex id in the opposing half.
        const int opposite = 1 - half_of[v];
        if (min_id[opposite][j] < min_id[opposite][best]) best = j;
      }
    }
    voted[best].push_back(v);
  }

  // Rebalance: truncate to n dropping highest ids, then hand leftovers
  // (ascending id) to the deficient cluster whose smallest member id is
  // lowest; empty clusters come last, by index.
  std::vector<int> labels(N, -1);
  std::vector<int> sizes(k, 0);
  std::vector<int> leftovers;
  for (int j = 0; j < k; ++j) {
    auto& members = voted[j];  // ascending ids by construction
    const int keep = std::min<int>(n, static_cast<int>(members.size()));
    for (int idx = 0; idx < keep; ++idx) labels[members[idx]] = j;
    for (int idx = keep; idx < static_cast<int>(members.size()); ++idx)
      leftovers.push_back(members[idx]);
    sizes[j] = keep;
  }
  std::sort(leftovers.begin(), leftovers.end());

  auto next_deficient = [&]() {
    int best = -1;
    for (int j = 0; j < k; ++j) {
      if (sizes[j] >= n) continue;
      if (best < 0) {
        best = j;
        continue;
      }
      const int id_b = sizes[best] > 0 ? min_id[0][best] : std::numeric_limits<int>::max();
      const int id_j = sizes[j] > 0 ? min_id[0][j] : std::numeric_limits<int>::max();
      if (std::pair{id_j, j} < std::pair{id_b, best}) best = j;
    }
    return best;
  };

  for (int v : leftovers) {
    const int j = next_deficient();
    labels[v] = j;
    ++sizes[j];
  }
  return Partition(std::move(labels), k);
}

int count_corrupted(const Graph& g, const Graph& g_ref, const EdgeSplit& split,
                    double threshold) {
  if (g.vertex_count() != g_ref.vertex_count())
    throw std::invalid_argument("count_corrupted: vertex sets differ");
  const Graph e2 = second_half_of(split, g);
  const Graph e2_ref = second_half_of(split, g_ref);
  std::vector<int> incident(g.vertex_count(), 0);
  for (auto [u, v] : symmetric_difference(e2, e2_ref)) {
    ++incident[u];
    ++incident[v];
  }
  int corrupted = 0;
  for (int c : incident)
    if (c >= threshold) ++corrupted;
  return corrupted;
}

}  // namespace sbmr
