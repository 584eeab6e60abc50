#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "sbmr/embedding.hpp"
#include "sbmr/graph.hpp"
#include "sbmr/partition.hpp"
#include "sbmr/sbm.hpp"

namespace sbmr {

/// Relaxation being solved, in vector form over unit vectors u:
///   min sum_{(u,v) in E} 1/2 ||u - v||^2
///   s.t. ||u||^2 = 1 for all u                     (unit)
///        sum_{u,v in VxV} 1/2 ||u - v||^2 = N^2 (1 - 1/k)   (spread)
///        <u, v> >= 0 for all u, v                  (nonneg)
/// The spread sum runs over all N^2 ordered pairs.

struct SolverConfig {
  int rank = 0;                 // 0 -> min(N, ceil(sqrt(2N)) + 1)
  int max_iterations = 2000;
  int restarts = 2;
  double step_size = 0.0;       // 0 -> 1 / (2 max(4, degree parameter))
  double step_decay = 0.0;      // step_t = step/(1 + t/decay); 0 -> iters/4
  double penalty_nonneg = 0.0;  // multiplier rate rho; 0 -> degree/2
  int multiplier_interval = 50;
  double polish_fraction = 0.25;  // trailing orthant-restricted iterations
  int polish_cycles = 150;        // clamp/project finishing cycles
  double tau_feas = 1e-3;
  double tau_obj = 1e-2;
  std::uint64_t seed = 0;

  void validate() const;
};

struct FeasibilityReport {
  double unit_violation = 0.0;    // max_u | ||u||^2 - 1 |
  double spread_violation = 0.0;  // | sum 1/2 d^2 - N^2(1-1/k) |, absolute
  double spread_target = 0.0;     // N^2 (1 - 1/k)
  double min_inner_product = 0.0; // most negative <u,v>, 0 if none negative

  /// Unit and nonneg violations compare to tol directly; the spread
  /// violation is scaled by its target (an N^2-sized sum).
  bool passes(double tol) const {
    return unit_violation <= tol &&
           spread_violation <= tol * spread_target &&
           min_inner_product >= -tol;
  }
};

/// Average-distance geometry of an embedding w.r.t. the planted partition.
/// Averages run over ordered pairs including u = v, matching the spread
/// constraint's convention (so alpha + (k-1) beta = k-1 for feasible inputs).
struct SdpDiagnostics {
  double alpha = 0.0;                  // avg within-cluster 1/2 d^2
  double beta = 0.0;                   // avg between-cluster 1/2 d^2
  std::vector<double> alpha_i;         // per-cluster alpha
  Eigen::MatrixXd centers;             // row i = W_i, the mean of cluster i
  std::vector<double> radii;           // R_u = || u - W_{cluster(u)} ||
  double mean_center_inner = 0.0;      // avg_{i != j} <W_i, W_j>
  double objective = 0.0;              // filled when a graph is supplied
};

struct SolveResult {
  Embedding embedding;
  double objective = 0.0;
  bool converged = true;       // false -> best feasible-projected iterate
  int restarts_used = 0;
  FeasibilityReport feasibility;
};

/// Objective value sum_{(u,v) in E} 1/2 ||u - v||^2, counting multiplicity.
double sdp_objective(const Embedding& e, const Graph& g);

/// Worst violation of each constraint family.
FeasibilityReport check_feasibility(const Embedding& e, const SbmParams& params);

SdpDiagnostics compute_diagnostics(const Embedding& e, const Partition& planted);
SdpDiagnostics compute_diagnostics(const Embedding& e, const Partition& planted, const Graph& g);

/// Low-rank factorized first-order solve: penalty gradient descent with
/// per-step row renormalization, escalating penalty weights, seeded
/// restarts, and a final exact projection pass. Deterministic per seed.
SolveResult solve_sdp(const Graph& g, const SbmParams& params, const SolverConfig& cfg);

/// The embedding u = e_{cluster(u)}: feasible, with objective equal to the
/// planted between-cluster edge count.
Embedding planted_integral_embedding(const Partition& planted);

}  // namespace sbmr
