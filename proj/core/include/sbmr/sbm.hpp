#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "sbmr/graph.hpp"
#include "sbmr/partition.hpp"

namespace sbmr {

/// SBM(n, k, a, b): k clusters of n vertices, within-cluster edge
/// probability a/n, between-cluster b/n.
struct SbmParams {
  int n = 0;
  int k = 0;
  double a = 0.0;
  double b = 0.0;

  int total_vertices() const { return n * k; }
  /// Expected edge count m = (nka + nk(k-1)b)/2.
  double expected_edges() const {
    const double nk = static_cast<double>(n) * k;
    return (nk * a + nk * (k - 1) * b) / 2.0;
  }
  /// a + b(k-1), the expected vertex degree.
  double degree_parameter() const { return a + b * (k - 1); }

  void validate() const;
};

/// Outlier budget: at most floor(epsilon1*m) between-cluster additions and
/// floor(epsilon2*m) within-cluster removals, with epsilon1+epsilon2 <= epsilon.
/// Monotone counts are absolute (not fractions of m).
struct AdversaryBudget {
  double epsilon = 0.0;
  double epsilon1 = 0.0;
  double epsilon2 = 0.0;
  std::int64_t monotone_add = 0;
  std::int64_t monotone_remove = 0;

  void validate() const;
};

enum class AdversaryStrategy { kUniform, kDegreeTargeted, kConcentrated };

AdversaryStrategy parse_strategy(const std::string& id);
std::string strategy_name(AdversaryStrategy s);

/// Samples a graph with the contiguous planted equipartition. Each pair is
/// drawn as an independent Bernoulli in lexicographic pair order, so the
/// result is reproducible byte-for-byte per seed.
std::pair<Graph, Partition> sample_sbm(const SbmParams& params, std::uint64_t seed);

/// Poisson multigraph variant: each pair's multiplicity is Poisson with the
/// pair's rate (a/n within, b/n between); no upper bound on a/n required.
std::pair<Graph, Partition> sample_poisson_sbm(const SbmParams& params, std::uint64_t seed);

/// Adds exactly add_within absent within-cluster edges and removes exactly
/// remove_between present between-cluster edges, uniformly among eligible
/// pairs. Throws BudgetInfeasibleError if a count cannot be met.
Graph apply_monotone_adversary(const Graph& g, const Partition& planted,
                               std::int64_t add_within, std::int64_t remove_between,
                               std::uint64_t seed);

/// Applies the outlier adversary: floor(eps1*m) between-cluster additions
/// and floor(eps2*m) within-cluster removals with targets chosen by the
/// strategy. m is the expected edge count of params.
Graph apply_outlier_adversary(const Graph& g, const Partition& planted,
                              const AdversaryBudget& budget, const SbmParams& params,
                              AdversaryStrategy strategy, std::uint64_t seed);

}  // namespace sbmr
