#pragma once

#include <cstdint>
#include <vector>

#include "sbmr/embedding.hpp"
#include "sbmr/graph.hpp"
#include "sbmr/partition.hpp"
#include "sbmr/sbm.hpp"

namespace sbmr {

/// delta-closeness result: delta in [0,1], the optimal matching sigma
/// (planted index -> candidate index, -1 if unmatched), and the matched
/// vertex count.
struct Closeness {
  double delta = 1.0;
  std::vector<int> sigma;
  std::int64_t overlap = 0;
};

/// Exact strong delta: 1 - max_sigma sum_i |V_i* ∩ V_sigma(i)| / (kn),
/// maximized over all permutations via optimal assignment.
Closeness closeness_strong(const Partition& p, const Partition& planted);

/// Exact weak delta: optimal injective partial matching between planted
/// clusters and the weak partition's clusters. n is the planted cluster
/// size (every weak cluster must have size <= n).
Closeness closeness_weak(const WeakPartition& w, const Partition& planted, int n);

/// Edges (with multiplicity) whose endpoints carry different labels.
std::int64_t cut_cost(const Graph& g, const Partition& p);

/// Parameters for the bound evaluators. Unpinned constants are exposed:
/// C0 ("C0 = 11 suffices"), the Grothendieck bound KG < 1.783, and the
/// generic constant C of the lower-bound inequalities.
struct BoundInputs {
  SbmParams params;
  double epsilon = 0.0;
  double s = 1.0;       // tail parameter, >= 1
  double eta = 0.0;     // in [1/(a+b(k-1)), 1/2]; 0 -> lower endpoint
  double C0 = 11.0;
  double delta0 = 0.0;  // 0 -> floor k e^{-(a-b)^2/(100a)}
  double KG = 1.783;

  double degree_parameter() const { return params.degree_parameter(); }
  double c9() const { return 6.0 * KG + 4.0; }
  double resolved_eta() const;
  double delta0_floor() const;
};

/// Average intra-cluster distance bound
///   alpha <= c9 sqrt(a+b(k-1)) s / (a-b) + (a+b(k-1)) eps / (a-b).
double alpha_bound(const BoundInputs& in);
/// Failure probability 2 exp(-9 s^2 N / (4 + 8 s / sqrt(a+b(k-1)))).
double alpha_bound_failure_prob(const BoundInputs& in);
/// High-confidence form: (a+b(k-1)) (eps + c9 sqrt(eta)) / (a-b).
double corollary11_alpha_bound(const BoundInputs& in);
/// Failure probability 2 exp(-eta m).
double corollary11_failure_prob(const BoundInputs& in);

/// Every named bound, evaluated both with constant 1 (the raw bracketed
/// expression) and with the constants the proofs pin down.
struct BoundReport {
  double theorem9_alpha_bound = 0.0;
  double theorem9_failure_prob = 0.0;
  double corollary11_alpha_bound = 0.0;
  double corollary11_failure_prob = 0.0;
  double theorem5_delta = 0.0;            // raw, constant 1
  double theorem5_delta_composed = 0.0;   // 144 * theorem9 alpha bound
  double theorem5_delta_prime = 0.0;      // raw eta form
  double theorem5_delta_prime_composed = 0.0;
  double theorem6_delta0_floor = 0.0;
  double theorem6_delta = 0.0;            // raw delta0 + eps m/((a-b)kn)
  double theorem6_delta_composed = 0.0;   // 4 delta0 + 80 eps m/((a-b)kn)
  double theorem2_condition_lhs = 0.0;    // must be <= c/k for boosting
  double lemma27_cut_bound = 0.0;
  double lemma27_failure_prob = 0.0;
  bool degree_regime_ok = false;          // a+b(k-1) >= C0
  bool boost_degree_regime_ok = false;    // a+b(k-1) >= 2 C0
  bool eta_in_range = false;
  bool theorem6_delta0_vacuous = false;   // delta0 floor >= 1
};

BoundReport delta_bounds(const BoundInputs& in);

/// Left side of the deviation bound
///   | sum_{u<v} (a_uv - E a_uv) ||u - v||^2 |
/// together with the right side 6 KG sqrt(a+b(k-1)) N s. The expectation
/// uses a/n for within-cluster pairs and b/n for between-cluster pairs,
/// so g must be the pre-adversary simple graph.
struct DeviationCheck {
  double residual = 0.0;
  double bound = 0.0;
};

DeviationCheck grothendieck_residual(const Graph& g, const Partition& planted,
                                     const SbmParams& params, const Embedding& e,
                                     double s, double KG = 1.783);

/// Finite distribution over support {0, ..., size-1}.
struct DiscreteDistribution {
  std::vector<double> mass;

  void validate() const;  // nonnegative, sums to 1 within 1e-12
  double event_probability(const std::vector<int>& event) const;
};

/// KL divergence sum q log2(q/p), with 0 log 0 = 0; +infinity when q has
/// mass outside p's support. Base-2 logarithms throughout this module.
double kl_divergence(const DiscreteDistribution& q, const DiscreteDistribution& p);

/// Lower bound on the divergence from any event partition (log-sum
/// inequality): sum_i q(E_i) log2(q(E_i)/p(E_i)).
double kl_partition_lower_bound(const DiscreteDistribution& q, const DiscreteDistribution& p,
                                const std::vector<std::vector<int>>& events);

/// Event-probability transfer bound
///   Q(E) <= max(2 dkl / (-log2 P(E) + 1), e sqrt(2 P(E))).
double kl_event_bound(double dkl, double p_event);

}  // namespace sbmr
