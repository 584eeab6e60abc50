#pragma once

#include <cstdint>
#include <vector>

#include "sbmr/graph.hpp"
#include "sbmr/partition.hpp"
#include "sbmr/sbm.hpp"

namespace sbmr {

/// Exact Poisson pmf / tail machinery used by the lower-bound evaluators.
double poisson_pmf(double lambda, std::int64_t count);
/// Pr(P >= threshold), summed to the stated tail precision.
double poisson_upper_tail(double lambda, std::int64_t threshold);

/// Pair of Poisson rates with a truncation point beyond which both pmf
/// tails are below 1e-12.
struct PoissonPair {
  double lambda1 = 0.0;
  double lambda2 = 0.0;

  void validate() const;
  std::int64_t truncation() const;
};

/// Pr(P1 = P2) under the maximal coupling: 1 - ||P1 - P2||_TV. Exactly 1
/// when the rates coincide.
double coupling_overlap(const PoissonPair& pair);

/// Constants (C1, C2) witnessing overlap >= C1 exp(-C2 (l1-l2)^2/(l1+l2))
/// over a rate grid (the analysis leaves them unspecified).
struct CouplingWitness {
  double C1 = 0.0;
  double C2 = 0.0;
};
CouplingWitness coupling_constant_witness(const std::vector<PoissonPair>& grid);

/// Draws kappa ~ Poisson(lambda2 - lambda1) independently of the observed
/// count z and caps it at floor(2 (lambda2 - lambda1)). The z argument is
/// kept for interface fidelity with the adversary construction; the
/// additive coupling makes the increment's law independent of it.
std::int64_t sample_kappa_hat(double lambda1, double lambda2, std::int64_t z,
                              std::uint64_t seed);

/// Lower-bound adversary configuration: |L'| = floor(rho_fraction * n).
struct LbAdversaryConfig {
  double rho_fraction = 0.1;
  std::uint64_t seed = 0;

  void validate(int n) const;
};

/// Suggested rho = eps (a+b) / (4 (a-b)), making the worst-case addition
/// budget 4 (a-b) rho n equal eps (a+b) n exactly.
double suggest_rho_fraction(const SbmParams& params, double epsilon);

/// Appendix-style adversary for the k = 2 Poisson model: adds
/// kappa_hat(Z) edges between L' and R'' and between R' and L'' so the
/// targeted side-pair counts mimic the within-side distribution.
Graph lb_adversary(const Graph& g, const Partition& planted, const SbmParams& params,
                   const LbAdversaryConfig& cfg);

/// Result of the Monte Carlo distinguishing game on Poisson pairs.
struct GameResult {
  double error_rate = 0.0;
  double half_width = 0.0;    // 3 binomial standard deviations
  double eta = 0.0;           // coupling overlap of the two rates
  double lemma32_floor = 0.0; // eta^4 / 2
  std::int64_t trials = 0;
};

/// Bayes-optimal likelihood test on unordered pairs {(X1,Y1),(Y2,X2)}
/// drawn from D1 x D2 and D2 x D1; ties are decided by a seeded coin.
GameResult distinguishing_game(double lambda1, double lambda2, std::int64_t trials,
                               std::uint64_t seed);

/// Right-hand sides of the two-community impossibility inequalities
///   (a-b) < C sqrt((a+b) ln(1/delta))   and   (a-b) < C eps (a+b)/delta.
struct LbBoundReport {
  double gap = 0.0;           // a - b
  double bound10_rhs = 0.0;
  double bound11_rhs = 0.0;
  bool bound10_blocks = false;
  bool bound11_blocks = false;
};

LbBoundReport lb_bound_values(const SbmParams& params, double epsilon, double delta,
                              double C = 1.0);

}  // namespace sbmr
