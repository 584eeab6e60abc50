#include "sbmr/lower_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sbmr/rng.hpp"

namespace sbmr {

double poisson_pmf(double lambda, std::int64_t count) {
  if (lambda < 0.0 || count < 0) throw std::invalid_argument("poisson_pmf: bad arguments");
  if (lambda == 0.0) return count == 0 ? 1.0 : 0.0;
  return std::exp(static_cast<double>(count) * std::log(lambda) - lambda -
                  std::lgamma(static_cast<double>(count) + 1.0));
}

double poisson_upper_tail(double lambda, std::int64_t threshold) {
  if (threshold <= 0) return 1.0;
  // 1 - cdf(threshold - 1), summed below the threshold for accuracy when
  // the tail is the larger piece.
  double below = 0.0;
  for (std::int64_t k = 0; k < threshold; ++k) below += poisson_pmf(lambda, k);
  return std::max(0.0, 1.0 - below);
}

void PoissonPair::validate() const {
  if (lambda1 <= 0.0 || lambda2 <= 0.0)
    throw std::invalid_argument("PoissonPair: rates must be positive");
}

std::int64_t PoissonPair::truncation() const {
  const double top = std::max(lambda1, lambda2);
  // Mean + 12 sd + margin puts both pmf tails far below 1e-12.
  auto guess = static_cast<std::int64_t>(std::ceil(top + 12.0 * std::sqrt(top) + 30.0));
  while (poisson_upper_tail(lambda1, guess) > 1e-12 ||
         poisson_upper_tail(lambda2, guess) > 1e-12)
    guess += std::max<std::int64_t>(8, guess / 4);
  return guess;
}

double coupling_overlap(const PoissonPair& pair) {
  pair.validate();
  // 1 - TV keeps the equal-rates case exact: every |p1 - p2| term is 0.
  const std::int64_t cutoff = pair.truncation();
  double tv = 0.0;
  for (std::int64_t k = 0; k <= cutoff; ++k)
    tv += std::abs(poisson_pmf(pair.lambda1, k) - poisson_pmf(pair.lambda2, k));
  return 1.0 - 0.5 * tv;
}

CouplingWitness coupling_constant_witness(const std::vector<PoissonPair>& grid) {
  // For a candidate C2, the largest valid C1 is the grid minimum of
  // overlap * exp(C2 ratio). Scan C2 and keep the pair maximizing C1
  // subject to C1 <= 1 (the bound is vacuous beyond that).
  CouplingWitness best;
  for (double C2 = 0.05; C2 <= 5.0 + 1e-9; C2 += 0.05) {
    double C1 = std::numeric_limits<double>::infinity();
    for (const auto& pair : grid) {
      const double ratio = (pair.lambda1 - pair.lambda2) * (pair.lambda1 - pair.lambda2) /
                           (pair.lambda1 + pair.lambda2);
      C1 = std::min(C1, coupling_overlap(pair) * std::exp(C2 * ratio));
    }
    C1 = std::min(C1, 1.0);
    if (C1 > best.C1) best = CouplingWitness{C1, C2};
  }
  return best;
}

std::int64_t sample_kappa_hat(double lambda1, double lambda2, std::int64_t /*z*/,
                              std::uint64_t seed) {
  if (lambda2 <= lambda1 || lambda1 < 0.0)
    throw std::invalid_argument("sample_kappa_hat: requires lambda2 > lambda1 >= 0");
  Rng rng(seed);
  const auto kappa = static_cast<std::int64_t>(rng.next_poisson(lambda2 - lambda1));
  const auto cap = static_cast<std::int64_t>(std::floor(2.0 * (lambda2 - lambda1)));
  return std::min(kappa, cap);
}

void LbAdversaryConfig::validate(int n) const {
  if (!(rho_fraction > 0.0 && rho_fraction < 0.5))
    throw std::invalid_argument("LbAdversaryConfig: rho_fraction must lie in (0, 1/2)");
  if (static_cast<int>(rho_fraction * n) < 1)
    throw std::invalid_argument("LbAdversaryConfig: floor(rho n) must be >= 1");
}

double suggest_rho_fraction(const SbmParams& params, double epsilon) {
  if (params.a <= params.b)
    throw std::invalid_argument("suggest_rho_fraction: requires a > b");
  return epsilon * (params.a + params.b) / (4.0 * (params.a - params.b));
}

Graph lb_adversary(const Graph& g, const Partition& planted, const SbmParams& params,
                   const LbAdversaryConfig& cfg) {
  params.validate();
  if (params.k != 2) throw std::invalid_argument("lb_adversary: k = 2 only");
  if (g.simple()) throw std::invalid_argument("lb_adversary: expects the Poisson multigraph");
  if (planted.vertex_count() != g.vertex_count())
    throw std::invalid_argument("lb_adversary: partition mismatch");
  const int n = params.n;
  cfg.validate(n);
  if (params.a == params.b) return g;  // equal rates: kappa_hat is identically 0

  const int chosen = static_cast<int>(cfg.rho_fraction * n);
  // Sides are the contiguous planted clusters; L' and R' take the first
  // floor(rho n) ids of each.
  auto side_of = [&](int v) { return planted.label(v); };
  auto is_primed = [&](int v) {
    const int offset = v - side_of(v) * n;
    return offset < chosen;
  };

  // Aggregate rate bookkeeping: |L'| = chosen and |R''| = n - chosen pairs
  // each carry rate b/n, so Z_{L'} ~ Poisson(b M) with
  // M = chosen (n - chosen) / n, and the target rate is a M.
  const double M = static_cast<double>(chosen) * (n - chosen) / n;
  const double lambda1 = params.b * M;
  const double lambda2 = params.a * M;

  std::int64_t z_left = 0, z_right = 0;
  for (const Edge& e : g.edges()) {
    if (side_of(e.u) == side_of(e.v)) continue;
    const bool u_primed = is_primed(e.u), v_primed = is_primed(e.v);
    if (u_primed == v_primed) continue;  // L'-R' and L''-R'' pairs are untouched
    const int primed_vertex = u_primed ? e.u : e.v;
    (side_of(primed_vertex) == 0 ? z_left : z_right) += e.mult;
  }

  Graph out = g;
  Rng rng(mix_seed(cfg.seed, 1));
  auto add_edges = [&](int primed_side, std::int64_t count) {
    const int primed_base = primed_side * n;
    const int other_base = (1 - primed_side) * n;
    for (std::int64_t i = 0; i < count; ++i) {
      const int u = primed_base + static_cast<int>(rng.next_below(chosen));
      const int v = other_base + chosen + static_cast<int>(rng.next_below(n - chosen));
      out.add_edge(u, v);
    }
  };
  add_edges(0, sample_kappa_hat(lambda1, lambda2, z_left, mix_seed(cfg.seed, 2)));
  add_edges(1, sample_kappa_hat(lambda1, lambda2, z_right, mix_seed(cfg.seed, 3)));
  return out;
}

GameResult distinguishing_game(double lambda1, double lambda2, std::int64_t trials,
                               std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("distinguishing_game: trials must be >= 1");
  if (lambda1 < 0.0 || lambda2 < 0.0)
    throw std::invalid_argument("distinguishing_game: negative rate");

  auto log_pmf = [](double lambda, std::int64_t k) {
    if (lambda == 0.0)
      return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    return static_cast<double>(k) * std::log(lambda) - lambda -
           std::lgamma(static_cast<double>(k) + 1.0);
  };

  std::int64_t errors = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    const auto x1 = static_cast<std::int64_t>(rng.next_poisson(lambda1));
    const auto y1 = static_cast<std::int64_t>(rng.next_poisson(lambda2));
    const auto y2 = static_cast<std::int64_t>(rng.next_poisson(lambda2));
    const auto x2 = static_cast<std::int64_t>(rng.next_poisson(lambda1));
    // Pair A = (x1, y1) ~ D_Left, pair B = (y2, x2) ~ D_Right; present
    // them in coin-flipped order and ask which one is D_Left.
    const bool swapped = rng.next_bernoulli(0.5);
    const auto& first = swapped ? std::pair{y2, x2} : std::pair{x1, y1};
    const auto& second = swapped ? std::pair{x1, y1} : std::pair{y2, x2};

    // Log-likelihood of "first is D_Left" minus "second is D_Left".
    const double ll_first = log_pmf(lambda1, first.first) + log_pmf(lambda2, first.second) +
                            log_pmf(lambda2, second.first) + log_pmf(lambda1, second.second);
    const double ll_second = log_pmf(lambda1, second.first) + log_pmf(lambda2, second.second) +
                             log_pmf(lambda2, first.first) + log_pmf(lambda1, first.second);
    bool guess_first_is_left;
    if (ll_first > ll_second) {
      guess_first_is_left = true;
    } else if (ll_first < ll_second) {
      guess_first_is_left = false;
    } else {
      guess_first_is_left = rng.next_bernoulli(0.5);
    }
    const bool truth_first_is_left = !swapped;
    if (guess_first_is_left != truth_first_is_left) ++errors;
  }

  GameResult res;
  res.trials = trials;
  res.error_rate = static_cast<double>(errors) / static_cast<double>(trials);
  res.half_width =
      3.0 * std::sqrt(res.error_rate * (1.0 - res.error_rate) / static_cast<double>(trials));
  if (lambda1 > 0.0 && lambda2 > 0.0) {
    res.eta = coupling_overlap(PoissonPair{lambda1, lambda2});
  } else {
    res.eta = lambda1 == lambda2 ? 1.0 : std::exp(-std::abs(lambda2 - lambda1));
  }
  res.lemma32_floor = std::pow(res.eta, 4.0) / 2.0;
  return res;
}

LbBoundReport lb_bound_values(const SbmParams& params, double epsilon, double delta,
                              double C) {
  if (params.k != 2) throw std::invalid_argument("lb_bound_values: k = 2 regime only");
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("lb_bound_values: delta must lie in (0, 1]");
  LbBoundReport r;
  r.gap = params.a - params.b;
  const double total = params.a + params.b;
  r.bound10_rhs = C * std::sqrt(total * std::log(1.0 / delta));
  r.bound11_rhs = C * epsilon * total / delta;
  r.bound10_blocks = r.gap < r.bound10_rhs;
  r.bound11_blocks = r.gap < r.bound11_rhs;
  return r;
}

}  // namespace sbmr
