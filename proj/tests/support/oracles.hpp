#pragma once

// Test-only oracles, independent of the library paths they check.

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "sbmr/embedding.hpp"
#include "sbmr/graph.hpp"
#include "sbmr/partition.hpp"

namespace sbmr::testing {

/// Strong delta by exhaustive search over all k! permutations (k <= 8).
double brute_force_strong_delta(const Partition& p, const Partition& planted);

/// Weak delta by exhaustive search over injective partial matchings,
/// feasible for small k and k'.
double brute_force_weak_delta(const WeakPartition& w, const Partition& planted);

/// Random feasible embedding: unit rows, entrywise nonnegative (so all
/// inner products are >= 0 exactly), with the spread constraint satisfied
/// to 1e-12 relative by bisection between a concentrated configuration
/// (spread below target) and a block-orthogonal one (spread above it).
Embedding random_feasible_embedding(int n, int k, std::uint64_t seed);

/// Random unbalanced partition of n*k vertices into clusters of size <= n.
WeakPartition random_weak_partition(int n, int k, std::uint64_t seed);

/// Uniformly random balanced partition (n per cluster).
Partition random_balanced_partition(int n, int k, std::uint64_t seed);

/// Full-matrix reference solve of the relaxation over the Gram matrix by
/// ADMM: PSD projection via eigendecomposition against Dykstra projection
/// onto {diag = 1, total sum = N^2/k, entrywise >= 0}. Returns the
/// objective value. Independent of the low-rank first-order solver.
double admm_reference_objective(const Graph& g, int k, int iterations = 4000,
                                double step = 1.0);

}  // namespace sbmr::testing
