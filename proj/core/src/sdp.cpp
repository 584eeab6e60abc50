#include "sbmr/sdp.hpp"

#include <cmath>
#include <stdexcept>

namespace sbmr {

void SolverConfig::validate() const {
  if (rank < 0 || max_iterations < 1 || restarts < 1)
    throw std::invalid_argument("SolverConfig: rank/iterations/restarts must be positive");
  if (tau_feas <= 0.0 || tau_feas >= 1.0 || tau_obj <= 0.0 || tau_obj >= 1.0)
    throw std::invalid_argument("SolverConfig: tolerances must lie in (0, 1)");
  if (step_size < 0.0 || step_decay < 0.0 || penalty_nonneg < 0.0 || multiplier_interval < 1 ||
      polish_fraction < 0.0 || polish_fraction > 1.0 || polish_cycles < 0)
    throw std::invalid_argument("SolverConfig: bad step/multiplier schedule");
}

double sdp_objective(const Embedding& e, const Graph& g) {
  double total = 0.0;
  for (const Edge& edge : g.edges()) {
    const double d2 = (e.vectors.row(edge.u) - e.vectors.row(edge.v)).squaredNorm();
    total += 0.5 * d2 * static_cast<double>(edge.mult);
  }
  return total;
}

namespace {

/// sum over all N^2 ordered pairs of 1/2 ||u - v||^2, which collapses to
/// N * sum ||u||^2 - ||sum_u u||^2.
double spread_sum(const Eigen::MatrixXd& x) {
  const double n = static_cast<double>(x.rows());
  const Eigen::VectorXd colsum = x.colwise().sum();
  return n * x.rowwise().squaredNorm().sum() - colsum.squaredNorm();
}

}  // namespace

FeasibilityReport check_feasibility(const Embedding& e, const SbmParams& params) {
  const int N = e.vertex_count();
  const double k = static_cast<double>(params.k);
  FeasibilityReport report;
  report.spread_target = static_cast<double>(N) * N * (1.0 - 1.0 / k);

  for (int u = 0; u < N; ++u)
    report.unit_violation =
        std::max(report.unit_violation, std::abs(e.vectors.row(u).squaredNorm() - 1.0));

  report.spread_violation = std::abs(spread_sum(e.vectors) - report.spread_target);

  // Full pairwise scan; N <= 2000 at desk scale.
  const Eigen::MatrixXd gram = e.vectors * e.vectors.transpose();
  double min_inner = 0.0;
  for (int u = 0; u < N; ++u)
    for (int v = u + 1; v < N; ++v) min_inner = std::min(min_inner, gram(u, v));
  report.min_inner_product = min_inner;
  return report;
}

SdpDiagnostics compute_diagnostics(const Embedding& e, const Partition& planted) {
  const int N = e.vertex_count();
  const int k = planted.k();
  if (planted.vertex_count() != N)
    throw std::invalid_argument("compute_diagnostics: planted partition size mismatch");
  const auto clusters = planted.clusters();

  SdpDiagnostics diag;
  diag.alpha_i.assign(k, 0.0);
  diag.radii.assign(N, 0.0);
  diag.centers = Eigen::MatrixXd::Zero(k, e.dimension());

  const Eigen::VectorXd row_norms = e.vectors.rowwise().squaredNorm();
  const Eigen::MatrixXd gram = e.vectors * e.vectors.transpose();
  auto half_dist2 = [&](int u, int v) {
    return 0.5 * (row_norms(u) + row_norms(v) - 2.0 * gram(u, v));
  };

  // alpha_i over ordered pairs (u = v included, contributing zero).
  for (int i = 0; i < k; ++i) {
    const auto& cluster = clusters[i];
    double sum = 0.0;
    for (int u : cluster)
      for (int v : cluster) sum += half_dist2(u, v);
    diag.alpha_i[i] = sum / (static_cast<double>(cluster.size()) * cluster.size());
    for (int u : cluster) diag.centers.row(i) += e.vectors.row(u);
    diag.centers.row(i) /= static_cast<double>(cluster.size());
  }

  // alpha over all ordered within pairs; beta over all ordered between pairs.
  double within_sum = 0.0, between_sum = 0.0;
  double within_pairs = 0.0, between_pairs = 0.0;
  for (int i = 0; i < k; ++i) {
    const double ni = static_cast<double>(clusters[i].size());
    within_pairs += ni * ni;
    within_sum += diag.alpha_i[i] * ni * ni;
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      for (int u : clusters[i])
        for (int v : clusters[j]) between_sum += half_dist2(u, v);
      between_pairs += ni * static_cast<double>(clusters[j].size());
    }
  }
  diag.alpha = within_sum / within_pairs;
  diag.beta = between_pairs > 0 ? between_sum / between_pairs : 0.0;

  for (int u = 0; u < N; ++u)
    diag.radii[u] = (e.vectors.row(u) - diag.centers.row(planted.label(u))).norm();

  double inner_sum = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) inner_sum += diag.centers.row(i).dot(diag.centers.row(j));
  diag.mean_center_inner = k > 1 ? inner_sum / (static_cast<double>(k) * (k - 1)) : 0.0;
  return diag;
}

SdpDiagnostics compute_diagnostics(const Embedding& e, const Partition& planted, const Graph& g) {
  SdpDiagnostics diag = compute_diagnostics(e, planted);
  diag.objective = sdp_objective(e, g);
  return diag;
}

Embedding planted_integral_embedding(const Partition& planted) {
  Embedding e{Eigen::MatrixXd::Zero(planted.vertex_count(), planted.k())};
  for (int u = 0; u < planted.vertex_count(); ++u) e.vectors(u, planted.label(u)) = 1.0;
  return e;
}

}  // namespace sbmr
