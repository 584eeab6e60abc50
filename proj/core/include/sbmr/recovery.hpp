#pragma once

#include <Eigen/Core>
#include <vector>

#include "sbmr/embedding.hpp"
#include "sbmr/partition.hpp"

namespace sbmr {

/// Core radius rho and the derived separation threshold Delta = 6 rho.
struct CoreParams {
  double rho = 0.27;

  double delta_cap() const { return 6.0 * rho; }
  void validate() const;
};

/// Per-cluster cores, remote-vertex count and center separation.
struct CoreReport {
  std::vector<std::vector<int>> cores;       // members of core(i)
  std::vector<int> core_sizes;
  int remote_count = 0;                      // |V'| = sum |V_i* \ core(i)|
  Eigen::MatrixXd center_distances;          // ||W_i - W_j||
  std::vector<std::pair<int, int>> separated_pairs;  // ||W_i - W_j|| >= Delta
  double lemma13_bound = 0.0;                // (alpha / rho^2) * kn
  std::vector<int> well_separated_set;       // greedy S from the Lemma-14 construction
  double lemma14_bound = 0.0;                // (1 - 6 alpha / (2 - Delta^2)) * k
};

/// Greedy clustering of the embedding: repeatedly take the residual
/// max-degree vertex of the auxiliary graph {(u,v): ||u - v|| < 2 rho}
/// (self-loops included) and cut its residual neighborhood, truncated to
/// size n. Ties break toward the lowest vertex id; truncation drops the
/// highest ids. Clusters are returned in creation order.
WeakPartition greedy_recover(const Embedding& e, int n, double rho);

/// Keeps the k largest clusters (ties by creation index) and fills each to
/// exactly n vertices with the remaining vertices, ascending id into the
/// lowest-index deficient cluster. Kept-cluster membership is preserved.
Partition weak_to_strong(const WeakPartition& w, int n, int k);

CoreReport compute_cores(const Embedding& e, const Partition& planted, const CoreParams& p);

}  // namespace sbmr
