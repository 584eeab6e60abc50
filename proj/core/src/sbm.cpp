#include "sbmr/sbm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "sbmr/errors.hpp"
#include "sbmr/rng.hpp"

namespace sbmr {

void SbmParams::validate() const {
  if (n < 1 || k < 1) throw std::invalid_argument("SbmParams: n and k must be >= 1");
  if (b < 0.0 || a < b) throw std::invalid_argument("SbmParams: need a >= b >= 0");
}

void AdversaryBudget::validate() const {
  if (epsilon < 0 || epsilon1 < 0 || epsilon2 < 0 || monotone_add < 0 || monotone_remove < 0)
    throw std::invalid_argument("AdversaryBudget: fields must be nonnegative");
  if (epsilon1 + epsilon2 > epsilon + 1e-12)
    throw std::invalid_argument("AdversaryBudget: epsilon1 + epsilon2 exceeds epsilon");
}

AdversaryStrategy parse_strategy(const std::string& id) {
  if (id == "uniform") return AdversaryStrategy::kUniform;
  if (id == "degree-targeted") return AdversaryStrategy::kDegreeTargeted;
  if (id == "concentrated") return AdversaryStrategy::kConcentrated;
  throw std::invalid_argument("unknown adversary strategy: " + id);
}

std::string strategy_name(AdversaryStrategy s) {
  switch (s) {
    case AdversaryStrategy::kUniform: return "uniform";
    case AdversaryStrategy::kDegreeTargeted: return "degree-targeted";
    case AdversaryStrategy::kConcentrated: return "concentrated";
  }
  return "?";
}

std::pair<Graph, Partition> sample_sbm(const SbmParams& params, std::uint64_t seed) {
  params.validate();
  const int n = params.n, k = params.k, N = params.total_vertices();
  const double p_in = params.a / n;
  const double p_out = params.b / n;
  if (p_in > 1.0 || p_out > 1.0)
    throw std::invalid_argument("sample_sbm: edge probability above 1 (a/n or b/n > 1)");

  Partition planted = Partition::contiguous(n, k);
  Graph g(N, true);
  Rng rng(seed);
  for (int u = 0; u < N; ++u) {
    const int cu = planted.label(u);
    for (int v = u + 1; v < N; ++v) {
      const double p = (planted.label(v) == cu) ? p_in : p_out;
      if (rng.next_bernoulli(p)) g.add_edge(u, v);
    }
  }
  return {std::move(g), std::move(planted)};
}

std::pair<Graph, Partition> sample_poisson_sbm(const SbmParams& params, std::uint64_t seed) {
  params.validate();
  const int n = params.n, k = params.k, N = params.total_vertices();
  const double rate_in = params.a / n;
  const double rate_out = params.b / n;

  Partition planted = Partition::contiguous(n, k);
  Graph g(N, false);
  Rng rng(seed);
  for (int u = 0; u < N; ++u) {
    const int cu = planted.label(u);
    for (int v = u + 1; v < N; ++v) {
      const double rate = (planted.label(v) == cu) ? rate_in : rate_out;
      const std::uint64_t mult = rng.next_poisson(rate);
      if (mult > 0) g.add_edge(u, v, static_cast<std::int64_t>(mult));
    }
  }
  return {std::move(g), std::move(planted)};
}

namespace {

/// All absent within-cluster pairs, lexicographic.
std::vector<std::pair<int, int>> absent_within_pairs(const Graph& g, const Partition& planted) {
  std::vector<std::pair<int, int>> out;
  const int N = g.vertex_count();
  for (int u = 0; u < N; ++u)
    for (int v = u + 1; v < N; ++v)
      if (planted.label(u) == planted.label(v) && !g.has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

/// All absent between-cluster pairs, lexicographic.
std::vector<std::pair<int, int>> absent_between_pairs(const Graph& g, const Partition& planted) {
  std::vector<std::pair<int, int>> out;
  const int N = g.vertex_count();
  for (int u = 0; u < N; ++u)
    for (int v = u + 1; v < N; ++v)
      if (planted.label(u) != planted.label(v) && !g.has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

std::vector<std::pair<int, int>> present_edges(const Graph& g, const Partition& planted,
                                               bool within) {
  std::vector<std::pair<int, int>> out;
  for (const Edge& e : g.edges())
    if ((planted.label(e.u) == planted.label(e.v)) == within) out.emplace_back(e.u, e.v);
  return out;
}

/// Draws `count` items uniformly without replacement via partial
/// Fisher-Yates; the chosen prefix order is deterministic per seed.
std::vector<std::pair<int, int>> choose_uniform(std::vector<std::pair<int, int>> pool,
                                                std::int64_t count, Rng& rng) {
  for (std::int64_t i = 0; i < count; ++i) {
    const std::uint64_t j = i + rng.next_below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace

Graph apply_monotone_adversary(const Graph& g, const Partition& planted,
                               std::int64_t add_within, std::int64_t remove_between,
                               std::uint64_t seed) {
  if (!g.simple()) throw std::invalid_argument("monotone adversary expects a simple graph");
  if (add_within < 0 || remove_between < 0)
    throw std::invalid_argument("monotone adversary: negative count");

  auto addable = absent_within_pairs(g, planted);
  if (add_within > static_cast<std::int64_t>(addable.size()))
    throw BudgetInfeasibleError("not enough absent within-cluster pairs",
                                static_cast<std::int64_t>(addable.size()));
  auto removable = present_edges(g, planted, /*within=*/false);
  if (remove_between > static_cast<std::int64_t>(removable.size()))
    throw BudgetInfeasibleError("not enough between-cluster edges",
                                static_cast<std::int64_t>(removable.size()));

  Rng rng(seed);
  Graph out = g;
  for (auto [u, v] : choose_uniform(std::move(addable), add_within, rng)) out.add_edge(u, v);
  for (auto [u, v] : choose_uniform(std::move(removable), remove_between, rng))
    out.remove_one(u, v);
  return out;
}

namespace {

/// Uniform strategy: sample targets uniformly among all eligible pairs.
void edit_uniform(Graph& g, std::vector<std::pair<int, int>> addable,
                  std::vector<std::pair<int, int>> removable, std::int64_t add_count,
                  std::int64_t remove_count, Rng& rng) {
  for (auto [u, v] : choose_uniform(std::move(addable), add_count, rng)) g.add_edge(u, v);
  for (auto [u, v] : choose_uniform(std::move(removable), remove_count, rng)) g.remove_one(u, v);
}

/// Degree-targeted strategy: every edit touches the currently
/// lowest-degree vertices, recomputing degrees after each edit.
void edit_degree_targeted(Graph& g, const Partition& planted, std::int64_t add_count,
                          std::int64_t remove_count) {
  auto deg = g.degrees();
  const int N = g.vertex_count();

  for (std::int64_t i = 0; i < add_count; ++i) {
    std::vector<int> by_degree(N);
    std::iota(by_degree.begin(), by_degree.end(), 0);
    std::sort(by_degree.begin(), by_degree.end(),
              [&](int x, int y) { return std::pair{deg[x], x} < std::pair{deg[y], y}; });
    bool added = false;
    for (int u : by_degree) {
      for (int v : by_degree) {
        if (v == u || planted.label(v) == planted.label(u) || g.has_edge(u, v)) continue;
        g.add_edge(u, v);
        ++deg[u];
        ++deg[v];
        added = true;
        break;
      }
      if (added) break;
    }
    if (!added) return;  // caller checked global feasibility
  }

  for (std::int64_t i = 0; i < remove_count; ++i) {
    // Within-cluster edge whose endpoint degrees are smallest.
    const Edge* chosen = nullptr;
    auto score = [&](const Edge& e) {
      auto lo = std::min(deg[e.u], deg[e.v]), hi = std::max(deg[e.u], deg[e.v]);
      return std::tuple{lo, hi, e.u, e.v};
    };
    for (const Edge& e : g.edges()) {
      if (planted.label(e.u) != planted.label(e.v)) continue;
      if (!chosen || score(e) < score(*chosen)) chosen = &e;
    }
    if (!chosen) return;
    const int u = chosen->u, v = chosen->v;
    g.remove_one(u, v);
    --deg[u];
    --deg[v];
  }
}

/// Concentrated strategy: spend the whole budget on a small vertex subset
/// (the first floor(budget/(a-b)) ids of cluster 0, extended if saturated).
void edit_concentrated(Graph& g, const Partition& planted, const SbmParams& params,
                       std::int64_t add_count, std::int64_t remove_count, Rng& rng) {
  const int N = g.vertex_count();
  const double gap = params.a - params.b;
  std::int64_t target_size =
      gap > 0 ? static_cast<std::int64_t>((add_count + remove_count) / gap) : N;
  target_size = std::clamp<std::int64_t>(target_size, 1, N);

  std::vector<bool> targeted(N, false);
  std::int64_t assigned = 0;
  for (int v = 0; v < N && assigned < target_size; ++v)
    if (planted.label(v) == 0) {
      targeted[v] = true;
      ++assigned;
    }

  auto in_focus = [&](int u, int v) { return targeted[u] || targeted[v]; };

  auto addable_all = absent_between_pairs(g, planted);
  std::vector<std::pair<int, int>> addable;
  for (auto p : addable_all)
    if (in_focus(p.first, p.second)) addable.push_back(p);
  // Spill to the full eligible set when the focus set saturates.
  if (static_cast<std::int64_t>(addable.size()) < add_count) addable = std::move(addable_all);

  auto removable_all = present_edges(g, planted, /*within=*/true);
  std::vector<std::pair<int, int>> removable;
  for (auto p : removable_all)
    if (in_focus(p.first, p.second)) removable.push_back(p);
  if (static_cast<std::int64_t>(removable.size()) < remove_count)
    removable = std::move(removable_all);

  edit_uniform(g, std::move(addable), std::move(removable), add_count, remove_count, rng);
}

}  // namespace

Graph apply_outlier_adversary(const Graph& g, const Partition& planted,
                              const AdversaryBudget& budget, const SbmParams& params,
                              AdversaryStrategy strategy, std::uint64_t seed) {
  if (!g.simple()) throw std::invalid_argument("outlier adversary expects a simple graph");
  budget.validate();
  params.validate();

  const double m = params.expected_edges();
  const auto add_count = static_cast<std::int64_t>(std::floor(budget.epsilon1 * m));
  const auto remove_count = static_cast<std::int64_t>(std::floor(budget.epsilon2 * m));
  if (add_count == 0 && remove_count == 0) return g;

  auto addable = absent_between_pairs(g, planted);
  if (add_count > static_cast<std::int64_t>(addable.size()))
    throw BudgetInfeasibleError("not enough absent between-cluster pairs",
                                static_cast<std::int64_t>(addable.size()));
  auto removable = present_edges(g, planted, /*within=*/true);
  if (remove_count > static_cast<std::int64_t>(removable.size()))
    throw BudgetInfeasibleError("not enough within-cluster edges",
                                static_cast<std::int64_t>(removable.size()));

  Rng rng(seed);
  Graph out = g;
  switch (strategy) {
    case AdversaryStrategy::kUniform:
      edit_uniform(out, std::move(addable), std::move(removable), add_count, remove_count, rng);
      break;
    case AdversaryStrategy::kDegreeTargeted:
      edit_degree_targeted(out, planted, add_count, remove_count);
      break;
    case AdversaryStrategy::kConcentrated:
      edit_concentrated(out, planted, params, add_count, remove_count, rng);
      break;
  }
  return out;
}

}  // namespace sbmr
