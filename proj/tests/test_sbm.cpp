#include <doctest.h>

#include <cmath>
#include <set>

#include "sbmr/errors.hpp"
#include "sbmr/lower_bounds.hpp"
#include "sbmr/rng.hpp"
#include "sbmr/sbm.hpp"

using namespace sbmr;

namespace {

// Classifies the edges of g against the planted labels.
struct EdgeTally {
  std::int64_t within = 0;
  std::int64_t between = 0;
};

EdgeTally tally(const Graph& g, const Partition& planted) {
  EdgeTally t;
  for (const Edge& e : g.edges()) {
    if (planted.label(e.u) == planted.label(e.v))
      t.within += e.mult;
    else
      t.between += e.mult;
  }
  return t;
}

}  // namespace

TEST_CASE("zero-rate sbm is the empty graph") {
  auto [g, planted] = sample_sbm(SbmParams{3, 2, 0.0, 0.0}, 7);
  CHECK(g.vertex_count() == 6);
  CHECK(g.edge_count() == 0);
  CHECK(planted.balanced(3));
}

TEST_CASE("probability-one sbm is complete") {
  // a/n = 1 and b/n = 1: every pair present.
  auto [g, planted] = sample_sbm(SbmParams{2, 2, 2.0, 2.0}, 3);
  CHECK(g.edge_count() == 6);  // K4
}

TEST_CASE("edge probability above one is rejected") {
  CHECK_THROWS_AS(sample_sbm(SbmParams{3, 2, 4.0, 0.0}, 1), std::invalid_argument);
}

TEST_CASE("mean edge count tracks m over seeds") {
  const SbmParams params{100, 2, 10.0, 2.0};
  const double m = params.expected_edges();
  CHECK(m == doctest::Approx(1200.0));

  // m counts n within-neighbors per vertex; per-pair sampling has n-1.
  // The exact expectation is m - k a / 2, and the per-draw variance is
  // the sum of p(1-p) over pairs.
  const double exact_mean =
      params.k * (params.n * (params.n - 1) / 2.0) * (params.a / params.n) +
      (params.n * params.n * params.k * (params.k - 1) / 2.0) * (params.b / params.n);
  CHECK(exact_mean == doctest::Approx(m - params.k * params.a / 2.0));
  const double p_in = params.a / params.n, p_out = params.b / params.n;
  const double draw_var =
      params.k * (params.n * (params.n - 1) / 2.0) * p_in * (1 - p_in) +
      (params.n * params.n * params.k * (params.k - 1) / 2.0) * p_out * (1 - p_out);

  double total = 0.0;
  const int runs = 200;
  for (int s = 0; s < runs; ++s) {
    auto [g, planted] = sample_sbm(params, 1000 + s);
    total += static_cast<double>(g.edge_count());
  }
  const double mean = total / runs;
  // Coarse contract: within 3 per-draw standard deviations of m.
  CHECK(std::abs(mean - m) <= 3.0 * std::sqrt(draw_var));
  // Sharp contract: within 4 sd of the mean around the exact expectation.
  CHECK(std::abs(mean - exact_mean) <= 4.0 * std::sqrt(draw_var / runs));
}

TEST_CASE("per-pair edge indicator is bernoulli with the right rate") {
  const SbmParams params{3, 2, 1.5, 0.6};
  const int runs = 10000;
  // Track one within pair (0,1) and one between pair (0,3).
  int within_hits = 0, between_hits = 0;
  for (int s = 0; s < runs; ++s) {
    auto [g, planted] = sample_sbm(params, 555000 + s);
    if (g.has_edge(0, 1)) ++within_hits;
    if (g.has_edge(0, 3)) ++between_hits;
  }
  const double p_in = params.a / params.n, p_out = params.b / params.n;
  const double tol_in = 4.0 * std::sqrt(p_in * (1 - p_in) / runs);
  const double tol_out = 4.0 * std::sqrt(p_out * (1 - p_out) / runs);
  CHECK(std::abs(within_hits / double(runs) - p_in) <= tol_in);
  CHECK(std::abs(between_hits / double(runs) - p_out) <= tol_out);
}

TEST_CASE("samplers are reproducible per seed") {
  const SbmParams params{40, 3, 8.0, 1.0};
  auto [g1, p1] = sample_sbm(params, 99);
  auto [g2, p2] = sample_sbm(params, 99);
  auto [g3, p3] = sample_sbm(params, 100);
  CHECK(g1 == g2);
  CHECK_FALSE(g1 == g3);

  auto [m1, q1] = sample_poisson_sbm(params, 99);
  auto [m2, q2] = sample_poisson_sbm(params, 99);
  CHECK(m1 == m2);
}

TEST_CASE("monotone adversary: empty action is identity") {
  auto [g, planted] = sample_sbm(SbmParams{20, 2, 6.0, 1.0}, 42);
  CHECK(apply_monotone_adversary(g, planted, 0, 0, 7) == g);
}

TEST_CASE("monotone adversary: saturated clusters cannot take more edges") {
  // Complete within-cluster subgraphs via a/n = 1.
  auto [g, planted] = sample_sbm(SbmParams{3, 2, 3.0, 0.0}, 5);
  CHECK_THROWS_AS(apply_monotone_adversary(g, planted, 1, 0, 7), BudgetInfeasibleError);
  try {
    apply_monotone_adversary(g, planted, 1, 0, 7);
  } catch (const BudgetInfeasibleError& err) {
    CHECK(err.max_feasible() == 0);
  }
}

TEST_CASE("monotone adversary edits are exact and correctly classified") {
  auto [g, planted] = sample_sbm(SbmParams{50, 2, 10.0, 2.0}, 11);
  const auto before = tally(g, planted);
  const Graph out = apply_monotone_adversary(g, planted, 100, 50, 13);
  const auto after = tally(out, planted);
  CHECK(out.edge_count() == g.edge_count() + 100 - 50);
  CHECK(after.within == before.within + 100);
  CHECK(after.between == before.between - 50);

  // Monotone direction, classified against the planted labels.
  CHECK(after.within >= before.within);
  CHECK(after.between <= before.between);
}

TEST_CASE("outlier adversary: zero budget is identity") {
  auto [g, planted] = sample_sbm(SbmParams{20, 2, 6.0, 1.0}, 2);
  AdversaryBudget budget;
  const Graph out =
      apply_outlier_adversary(g, planted, budget, SbmParams{20, 2, 6.0, 1.0},
                              AdversaryStrategy::kUniform, 3);
  CHECK(out == g);
}

TEST_CASE("outlier adversary: epsilon split must respect the total") {
  AdversaryBudget budget;
  budget.epsilon = 0.05;
  budget.epsilon1 = 0.04;
  budget.epsilon2 = 0.02;
  CHECK_THROWS_AS(budget.validate(), std::invalid_argument);
}

TEST_CASE("outlier adversary: uniform strategy edits exactly the floored budget") {
  const SbmParams params{50, 2, 10.0, 2.0};
  auto [g, planted] = sample_sbm(params, 21);
  AdversaryBudget budget;
  // eps1 m = 5 exactly, eps2 m = 0: m = 600.
  budget.epsilon = 5.0 / 600.0;
  budget.epsilon1 = 5.0 / 600.0;
  const Graph out =
      apply_outlier_adversary(g, planted, budget, params, AdversaryStrategy::kUniform, 23);

  const auto diff = symmetric_difference(g, out);
  CHECK(diff.size() == 5);
  for (auto [u, v] : diff) {
    CHECK(planted.label(u) != planted.label(v));  // every edit is a between-addition
    CHECK(out.has_edge(u, v));
    CHECK_FALSE(g.has_edge(u, v));
  }
}

TEST_CASE("outlier adversary invariant across strategies") {
  const SbmParams params{30, 3, 9.0, 2.0};
  const double m = params.expected_edges();
  auto [g, planted] = sample_sbm(params, 31);
  AdversaryBudget budget;
  budget.epsilon = 0.06;
  budget.epsilon1 = 0.04;
  budget.epsilon2 = 0.02;
  const auto cap_add = static_cast<std::int64_t>(std::floor(budget.epsilon1 * m));
  const auto cap_remove = static_cast<std::int64_t>(std::floor(budget.epsilon2 * m));

  for (auto strategy : {AdversaryStrategy::kUniform, AdversaryStrategy::kDegreeTargeted,
                        AdversaryStrategy::kConcentrated}) {
    CAPTURE(strategy_name(strategy));
    const Graph out = apply_outlier_adversary(g, planted, budget, params, strategy, 37);
    std::int64_t added_between = 0, removed_within = 0, other = 0;
    for (auto [u, v] : symmetric_difference(g, out)) {
      const bool within = planted.label(u) == planted.label(v);
      if (!within && out.has_edge(u, v))
        ++added_between;
      else if (within && !out.has_edge(u, v))
        ++removed_within;
      else
        ++other;
    }
    CHECK(other == 0);
    CHECK(added_between <= cap_add);
    CHECK(removed_within <= cap_remove);
    CHECK(added_between + removed_within > 0);
  }
}

TEST_CASE("unknown strategy id is rejected") {
  CHECK_THROWS_AS(parse_strategy("clever"), std::invalid_argument);
}

TEST_CASE("poisson sbm: zero rates give an empty multigraph") {
  auto [g, planted] = sample_poisson_sbm(SbmParams{10, 2, 0.0, 0.0}, 1);
  CHECK(g.edge_count() == 0);
  CHECK_FALSE(g.simple());
}

TEST_CASE("poisson sbm multiplicity histogram matches the pmf") {
  // a = b so every one of the 19900 pairs has rate 0.08.
  const SbmParams params{100, 2, 8.0, 8.0};
  auto [g, planted] = sample_poisson_sbm(params, 77);
  const int N = params.total_vertices();
  const double pairs = N * (N - 1) / 2.0;
  CHECK(pairs >= 10000);

  std::vector<std::int64_t> histogram(8, 0);
  for (const Edge& e : g.edges()) ++histogram[std::min<std::int64_t>(e.mult, 7)];
  histogram[0] = static_cast<std::int64_t>(pairs) - g.pair_count();

  // Chi-squared against the exact pmf, pooling counts >= 3.
  const double rate = 0.08;
  double chi2 = 0.0;
  double expected_tail = pairs;
  for (int c = 0; c < 3; ++c) {
    const double expected = pairs * poisson_pmf(rate, c);
    expected_tail -= expected;
    chi2 += (histogram[c] - expected) * (histogram[c] - expected) / expected;
  }
  std::int64_t observed_tail = 0;
  for (std::size_t c = 3; c < histogram.size(); ++c) observed_tail += histogram[c];
  chi2 += (observed_tail - expected_tail) * (observed_tail - expected_tail) / expected_tail;
  // 3 degrees of freedom; 0.999 quantile is 16.27.
  CHECK(chi2 < 16.27);
}

TEST_CASE("flattening the poisson model reproduces bernoulli rates") {
  const SbmParams params{100, 2, 8.0, 8.0};
  const double p_flat = 1.0 - std::exp(-params.a / params.n);

  double total = 0.0;
  const int runs = 60;
  for (int s = 0; s < runs; ++s) {
    auto [g, planted] = sample_poisson_sbm(params, 3000 + s);
    total += static_cast<double>(flatten_to_simple(g).edge_count());
  }
  const int N = params.total_vertices();
  const double pairs = N * (N - 1) / 2.0;
  const double expected = pairs * p_flat;
  const double sd = std::sqrt(pairs * p_flat * (1 - p_flat) / runs);
  CHECK(std::abs(total / runs - expected) <= 4.0 * sd);
}

TEST_CASE("flatten_to_simple caps multiplicities") {
  Graph g(4, false);
  g.add_edge(0, 1, 3);
  g.add_edge(2, 3, 1);
  const Graph flat = flatten_to_simple(g);
  CHECK(flat.simple());
  CHECK(flat.multiplicity(0, 1) == 1);
  CHECK(flat.edge_count() == 2);
  CHECK(flat.edge_count() == g.pair_count());

  // A simple graph flattens to itself.
  CHECK(flatten_to_simple(flat) == flat);
}
