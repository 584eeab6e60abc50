#pragma once

#include <cstdint>

#include "sbmr/graph.hpp"
#include "sbmr/partition.hpp"

namespace sbmr {

/// Random 2-coloring of the edge set: e1 and e2 partition the input's
/// edges. The color of a pair is a seeded hash coin, so any graph over the
/// same vertex set (e.g. the pre-adversary reference) can be colored
/// consistently with the same split.
struct EdgeSplit {
  Graph e1;
  Graph e2;
  std::uint64_t seed = 0;
};

struct BoostConfig {
  double threshold = 0.0;     // T; 0 -> (a-b)/20 with a, b estimated if needed
  bool random_halves = false; // seeded random half-split instead of id order
  std::uint64_t seed = 0;
};

/// Color of the pair (u, v) under the split's coin (true -> E2).
bool pair_in_second_half(std::uint64_t seed, int u, int v);

EdgeSplit split_edges(const Graph& g, std::uint64_t seed);

/// Colors another graph with this split's coin and returns its E2 part.
Graph second_half_of(const EdgeSplit& split, const Graph& g);

/// Majority-vote reassignment over the voting edges g2 (the E2 half):
/// each base cluster splits into id-ordered halves; every vertex joins the
/// cluster whose opposite half holds most of its g2 neighbors; the result
/// is rebalanced to exactly n per cluster. Ties prefer the vertex's base
/// cluster, then the tied cluster whose voting half contains the smallest
/// vertex id, so relabeling base clusters relabels the output identically.
Partition boost_partition(const Graph& g2, const Partition& base, int n, int k,
                          const BoostConfig& cfg);

/// Estimates (a, b) from the edge count and the base partition's
/// within/between split: a + b(k-1) = 2|E|/(nk).
std::pair<double, double> estimate_rates(const Graph& g, const Partition& base, int n, int k);

/// Number of vertices incident to >= threshold edges of
/// (E2 of g) symmetric-difference (E2 of g_ref).
int count_corrupted(const Graph& g, const Graph& g_ref, const EdgeSplit& split,
                    double threshold);

}  // namespace sbmr
