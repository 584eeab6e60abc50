#include "sbmr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sbmr/assignment.hpp"

namespace sbmr {

Closeness closeness_strong(const Partition& p, const Partition& planted) {
  const int k = planted.k();
  const int N = planted.vertex_count();
  if (p.vertex_count() != N || p.k() != k)
    throw std::invalid_argument("closeness_strong: shape mismatch");
  const int n = N / k;
  if (!p.balanced(n) || !planted.balanced(n))
    throw std::invalid_argument("closeness_strong: both partitions must be balanced");

  std::vector<std::vector<std::int64_t>> overlap(k, std::vector<std::int64_t>(k, 0));
  for (int v = 0; v < N; ++v) ++overlap[planted.label(v)][p.label(v)];

  Closeness out;
  out.sigma = max_weight_assignment(overlap);
  for (int i = 0; i < k; ++i)
    if (out.sigma[i] >= 0) out.overlap += overlap[i][out.sigma[i]];
  out.delta = 1.0 - static_cast<double>(out.overlap) / N;
  return out;
}

Closeness closeness_weak(const WeakPartition& w, const Partition& planted, int n) {
  const int N = planted.vertex_count();
  if (w.vertex_count() != N) throw std::invalid_argument("closeness_weak: vertex count mismatch");
  for (const auto& c : w.clusters)
    if (static_cast<int>(c.size()) > n)
      throw std::invalid_argument("closeness_weak: cluster larger than n");
  const int k = planted.k();
  const int kp = w.cluster_count();

  std::vector<std::vector<std::int64_t>> overlap(k, std::vector<std::int64_t>(kp, 0));
  for (int j = 0; j < kp; ++j)
    for (int v : w.clusters[j]) ++overlap[planted.label(v)][j];

  Closeness out;
  out.sigma = max_weight_assignment(overlap);
  for (int i = 0; i < k; ++i)
    if (out.sigma[i] >= 0) out.overlap += overlap[i][out.sigma[i]];
  out.delta = 1.0 - static_cast<double>(out.overlap) / N;
  return out;
}

std::int64_t cut_cost(const Graph& g, const Partition& p) {
  if (p.vertex_count() != g.vertex_count())
    throw std::invalid_argument("cut_cost: labels do not cover the graph");
  std::int64_t cost = 0;
  for (const Edge& e : g.edges())
    if (p.label(e.u) != p.label(e.v)) cost += e.mult;
  return cost;
}

double BoundInputs::resolved_eta() const {
  return eta > 0 ? eta : 1.0 / degree_parameter();
}

double BoundInputs::delta0_floor() const {
  const double a = params.a, b = params.b;
  return params.k * std::exp(-(a - b) * (a - b) / (100.0 * a));
}

namespace {
void require_gap(const BoundInputs& in) {
  if (in.params.a <= in.params.b)
    throw std::invalid_argument("bound evaluation requires a > b");
}
}  // namespace

double alpha_bound(const BoundInputs& in) {
  require_gap(in);
  if (in.s < 1.0) throw std::invalid_argument("alpha_bound: s must be >= 1");
  if (in.degree_parameter() <= in.C0)
    throw std::invalid_argument("alpha_bound: requires a + b(k-1) > C0");
  const double d = in.degree_parameter();
  const double gap = in.params.a - in.params.b;
  return in.c9() * std::sqrt(d) * in.s / gap + d * in.epsilon / gap;
}

double alpha_bound_failure_prob(const BoundInputs& in) {
  const double d = in.degree_parameter();
  const double N = in.params.total_vertices();
  const double s = in.s;
  return 2.0 * std::exp(-9.0 * s * s * N / (4.0 + 8.0 * s / std::sqrt(d)));
}

double corollary11_alpha_bound(const BoundInputs& in) {
  require_gap(in);
  const double d = in.degree_parameter();
  const double gap = in.params.a - in.params.b;
  return d * (in.epsilon + in.c9() * std::sqrt(in.resolved_eta())) / gap;
}

double corollary11_failure_prob(const BoundInputs& in) {
  return 2.0 * std::exp(-in.resolved_eta() * in.params.expected_edges());
}

BoundReport delta_bounds(const BoundInputs& in) {
  require_gap(in);
  const double d = in.degree_parameter();
  const double gap = in.params.a - in.params.b;
  const double N = in.params.total_vertices();
  const double m = in.params.expected_edges();
  const double eta = in.resolved_eta();

  BoundReport r;
  r.degree_regime_ok = d >= in.C0;
  r.boost_degree_regime_ok = d >= 2.0 * in.C0;
  r.eta_in_range = eta >= 1.0 / d && eta <= 0.5;

  r.theorem9_alpha_bound = in.c9() * std::sqrt(d) * in.s / gap + d * in.epsilon / gap;
  r.theorem9_failure_prob = alpha_bound_failure_prob(in);
  r.corollary11_alpha_bound = corollary11_alpha_bound(in);
  r.corollary11_failure_prob = corollary11_failure_prob(in);

  r.theorem5_delta = std::sqrt(d) / gap + in.epsilon * d / gap;
  r.theorem5_delta_composed = 144.0 * (in.c9() * std::sqrt(d) * 2.0 / gap + d * in.epsilon / gap);
  r.theorem5_delta_prime = (in.epsilon + std::sqrt(eta)) * d / gap;
  r.theorem5_delta_prime_composed = 144.0 * r.corollary11_alpha_bound;

  r.theorem6_delta0_floor = in.delta0_floor();
  const double delta0 = in.delta0 > 0 ? in.delta0 : r.theorem6_delta0_floor;
  const double corruption = in.epsilon * m / (gap * N);
  r.theorem6_delta = delta0 + corruption;
  r.theorem6_delta_composed = 4.0 * delta0 + 80.0 * corruption;
  r.theorem6_delta0_vacuous = delta0 >= 1.0;
  r.theorem2_condition_lhs = std::sqrt(d) / gap + in.epsilon * d / gap;

  r.lemma27_cut_bound = in.params.b * (in.params.k - 1) * N / 2.0 + 2.0 * std::sqrt(d) * N * in.s;
  r.lemma27_failure_prob =
      std::exp(-9.0 * in.s * in.s * N / (4.0 + 8.0 * in.s / std::sqrt(d)));
  return r;
}

DeviationCheck grothendieck_residual(const Graph& g, const Partition& planted,
                                     const SbmParams& params, const Embedding& e,
                                     double s, double KG) {
  if (!g.simple())
    throw std::invalid_argument("grothendieck_residual: pre-adversary graph must be simple");
  const int N = g.vertex_count();
  const double p_in = params.a / params.n;
  const double p_out = params.b / params.n;

  // sum_{u<v} a_uv d^2 - [p_in sum_in d^2 + p_out sum_out d^2], where the
  // adjacency part runs over edges only.
  double edge_part = 0.0;
  for (const Edge& edge : g.edges())
    edge_part += (e.vectors.row(edge.u) - e.vectors.row(edge.v)).squaredNorm();

  const Eigen::VectorXd norms = e.vectors.rowwise().squaredNorm();
  const Eigen::MatrixXd gram = e.vectors * e.vectors.transpose();
  double expected_part = 0.0;
  for (int u = 0; u < N; ++u)
    for (int v = u + 1; v < N; ++v) {
      const double d2 = norms(u) + norms(v) - 2.0 * gram(u, v);
      expected_part += (planted.label(u) == planted.label(v) ? p_in : p_out) * d2;
    }

  DeviationCheck out;
  out.residual = std::abs(edge_part - expected_part);
  out.bound = 6.0 * KG * std::sqrt(params.degree_parameter()) * N * s;
  return out;
}

void DiscreteDistribution::validate() const {
  double total = 0.0;
  for (double p : mass) {
    if (p < 0.0) throw std::invalid_argument("DiscreteDistribution: negative mass");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("DiscreteDistribution: masses must sum to 1");
}

double DiscreteDistribution::event_probability(const std::vector<int>& event) const {
  double p = 0.0;
  for (int x : event) p += mass.at(x);
  return p;
}

double kl_divergence(const DiscreteDistribution& q, const DiscreteDistribution& p) {
  if (q.mass.size() != p.mass.size())
    throw std::invalid_argument("kl_divergence: sample spaces differ");
  double total = 0.0;
  for (std::size_t x = 0; x < q.mass.size(); ++x) {
    if (q.mass[x] == 0.0) continue;  // 0 log 0 = 0
    if (p.mass[x] == 0.0) return std::numeric_limits<double>::infinity();
    total += q.mass[x] * std::log2(q.mass[x] / p.mass[x]);
  }
  return total;
}

double kl_partition_lower_bound(const DiscreteDistribution& q, const DiscreteDistribution& p,
                                const std::vector<std::vector<int>>& events) {
  double total = 0.0;
  for (const auto& event : events) {
    const double qe = q.event_probability(event);
    const double pe = p.event_probability(event);
    if (qe == 0.0) continue;
    if (pe == 0.0) return std::numeric_limits<double>::infinity();
    total += qe * std::log2(qe / pe);
  }
  return total;
}

double kl_event_bound(double dkl, double p_event) {
  if (dkl < 0.0) throw std::invalid_argument("kl_event_bound: negative divergence");
  if (std::isinf(dkl)) return std::numeric_limits<double>::infinity();
  const double divergence_branch = 2.0 * dkl / (-std::log2(p_event) + 1.0);
  const double mass_branch = std::exp(1.0) * std::sqrt(2.0 * p_event);
  return std::max(divergence_branch, mass_branch);
}

}  // namespace sbmr
