#include <algorithm>
#include <cmath>
#include <limits>

#include "sbmr/errors.hpp"
#include "sbmr/rng.hpp"
#include "sbmr/sdp.hpp"

namespace sbmr {

namespace {

int default_rank(int N) {
  const int r = static_cast<int>(std::ceil(std::sqrt(2.0 * N))) + 1;
  return std::min(N, std::max(2, r));
}

void normalize_rows(Eigen::MatrixXd& x) {
  for (int u = 0; u < x.rows(); ++u) {
    const double norm = x.row(u).norm();
    if (norm > 0) x.row(u) /= norm;
  }
}

/// Nonnegative-orthant retraction. A row that clamps to zero falls back to
/// its absolute value so renormalization stays defined.
void clamp_rows(Eigen::MatrixXd& x) {
  for (int u = 0; u < x.rows(); ++u) {
    Eigen::RowVectorXd clamped = x.row(u).cwiseMax(0.0);
    x.row(u) = clamped.norm() > 1e-12 ? clamped : x.row(u).cwiseAbs().eval();
  }
}

/// Two-pass projection heuristic: renormalize rows, then rescale the mean
/// component u -> s*mu + (u - mu) so ||sum u|| hits N/sqrt(k) exactly,
/// alternating. Residuals contract geometrically and the caller reports
/// what remains rather than hiding it.
double spread_project(Eigen::MatrixXd& x, int k, int passes) {
  const int N = static_cast<int>(x.rows());
  const double target = static_cast<double>(N) / std::sqrt(static_cast<double>(k));
  double residual = 0.0;
  for (int pass = 0; pass < passes; ++pass) {
    normalize_rows(x);
    const Eigen::RowVectorXd colsum = x.colwise().sum();
    const double norm = colsum.norm();
    if (norm < 1e-9 * N)
      throw SolverFailure("projection failed: embedding mean collapsed to zero");
    const double scale = target / norm;
    residual = std::abs(scale - 1.0);
    if (residual < 1e-15) return residual;
    x.rowwise() += (scale - 1.0) / N * colsum;
  }
  normalize_rows(x);
  return residual;
}

struct Iterate {
  Eigen::MatrixXd x;
  double objective = std::numeric_limits<double>::infinity();
};

/// One seeded run of the first-order method.
///
/// Constraints (2) and (3) are enforced by retraction every step (a pure
/// penalty stalls: near the all-rows-equal configuration its restoring
/// gradient is identical across rows and renormalization cancels it).
/// Constraint (4) is handled by augmented-Lagrangian multipliers on the
/// pairwise inner products: the active-pair coefficient matrix
/// C = max(0, M - rho G) joins the adjacency as an attraction term, and M
/// steps to max(0, M - rho G) between inner phases. A trailing fraction of
/// the iterations is restricted to the nonnegative orthant and the run
/// finishes with clamp/project cycles, which pins the inner products at
/// their bound without the oscillation an escalating penalty produces.
Iterate run_single(const Graph& g, const SbmParams& params, const SolverConfig& cfg,
                   std::uint64_t seed) {
  const int N = params.total_vertices();
  const int k = params.k;
  const int r = cfg.rank > 0 ? cfg.rank : default_rank(N);
  const double deg = std::max(4.0, params.degree_parameter());
  const double step0 = cfg.step_size > 0 ? cfg.step_size : 1.0 / (2.0 * deg);
  const double decay = cfg.step_decay > 0 ? cfg.step_decay : cfg.max_iterations / 4.0;
  const double rho = cfg.penalty_nonneg > 0 ? cfg.penalty_nonneg : 0.5 * deg;
  const int polish_from =
      cfg.max_iterations - static_cast<int>(cfg.polish_fraction * cfg.max_iterations);

  Rng rng(seed);
  Eigen::MatrixXd x(N, r);
  for (int u = 0; u < N; ++u)
    for (int j = 0; j < r; ++j) x(u, j) = std::abs(rng.next_normal());
  spread_project(x, k, 8);

  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(N, N);
  for (const Edge& e : g.edges()) {
    adj(e.u, e.v) += static_cast<double>(e.mult);
    adj(e.v, e.u) += static_cast<double>(e.mult);
  }
  Eigen::MatrixXd multipliers = Eigen::MatrixXd::Zero(N, N);

  for (int t = 0; t < cfg.max_iterations; ++t) {
    const Eigen::MatrixXd gram = x * x.transpose();
    Eigen::MatrixXd active = (multipliers - rho * gram).cwiseMax(0.0);
    active.diagonal().setZero();
    const Eigen::MatrixXd grad = -((adj + active) * x);

    x -= (step0 / (1.0 + t / decay)) * grad;
    if (t >= polish_from) clamp_rows(x);
    spread_project(x, k, 2);

    if ((t + 1) % cfg.multiplier_interval == 0) {
      const Eigen::MatrixXd gram2 = x * x.transpose();
      multipliers = (multipliers - rho * gram2).cwiseMax(0.0);
      multipliers.diagonal().setZero();
    }
  }

  for (int cycle = 0; cycle < cfg.polish_cycles; ++cycle) {
    clamp_rows(x);
    spread_project(x, k, 8);
  }
  spread_project(x, k, 64);

  Iterate out;
  out.objective = sdp_objective(Embedding{x}, g);
  out.x = std::move(x);
  return out;
}

}  // namespace

SolveResult solve_sdp(const Graph& g, const SbmParams& params, const SolverConfig& cfg) {
  params.validate();
  cfg.validate();
  if (!g.simple()) throw std::invalid_argument("solve_sdp: graph must be simple");
  if (g.vertex_count() != params.total_vertices())
    throw std::invalid_argument("solve_sdp: vertex count does not match n*k");

  Iterate best;
  int used = 0;
  for (int attempt = 0; attempt < cfg.restarts; ++attempt) {
    Iterate cur = run_single(g, params, cfg, mix_seed(cfg.seed, attempt));
    ++used;
    if (cur.objective < best.objective) best = std::move(cur);
  }
  if (!std::isfinite(best.objective))
    throw SolverFailure("all restarts failed to produce a finite objective");

  SolveResult result;
  result.embedding = Embedding{std::move(best.x)};
  result.objective = best.objective;
  result.restarts_used = used;
  result.feasibility = check_feasibility(result.embedding, params);
  result.converged = result.feasibility.passes(cfg.tau_feas);
  return result;
}

}  // namespace sbmr
