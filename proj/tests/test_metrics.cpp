#include <doctest.h>

#include <cmath>
#include <limits>

#include "sbmr/metrics.hpp"
#include "sbmr/rng.hpp"
#include "sbmr/sdp.hpp"
#include "support/oracles.hpp"

using namespace sbmr;

TEST_CASE("strong delta of the planted partition is zero") {
  const Partition planted = Partition::contiguous(5, 3);
  const Closeness c = closeness_strong(planted, planted);
  CHECK(c.delta == 0.0);
  CHECK(c.overlap == 15);
}

TEST_CASE("strong delta is invariant under cluster relabeling") {
  const Partition planted = Partition::contiguous(4, 3);
  const Partition shifted = planted.relabeled({1, 2, 0});
  CHECK(closeness_strong(shifted, planted).delta == 0.0);
}

TEST_CASE("one swapped vertex pair at k=2, n=3") {
  const Partition planted = Partition::contiguous(3, 2);
  // Swap vertex 0 and vertex 3 across the clusters.
  Partition swapped({1, 0, 0, 0, 1, 1}, 2);
  const Closeness c = closeness_strong(swapped, planted);
  CHECK(c.overlap == 4);
  CHECK(c.delta == doctest::Approx(1.0 / 3.0));
  CHECK(c.delta == doctest::Approx(testing::brute_force_strong_delta(swapped, planted)));
}

TEST_CASE("strong delta matches brute force over random balanced pairs") {
  int checked = 0;
  for (int k : {2, 3, 4, 5}) {
    for (int n : {2, 3, 5}) {
      for (int rep = 0; rep < 25; ++rep) {
        const auto seed = static_cast<std::uint64_t>(k * 10000 + n * 100 + rep);
        const Partition p = testing::random_balanced_partition(n, k, seed);
        const Partition q = testing::random_balanced_partition(n, k, seed + 7777);
        const double exact = testing::brute_force_strong_delta(p, q);
        const Closeness c = closeness_strong(p, Partition(q));
        CHECK(c.delta == doctest::Approx(exact).epsilon(1e-12));
        // sigma is a permutation achieving the optimum.
        std::vector<char> used(k, 0);
        std::int64_t sigma_overlap = 0;
        std::vector<std::vector<std::int64_t>> overlap(k, std::vector<std::int64_t>(k, 0));
        for (int v = 0; v < n * k; ++v) ++overlap[q.label(v)][p.label(v)];
        for (int i = 0; i < k; ++i) {
          REQUIRE(c.sigma[i] >= 0);
          CHECK_FALSE(used[c.sigma[i]]);
          used[c.sigma[i]] = 1;
          sigma_overlap += overlap[i][c.sigma[i]];
        }
        CHECK(sigma_overlap == c.overlap);
        ++checked;
      }
    }
  }
  CHECK(checked == 300);
}

TEST_CASE("weak delta: exact cases and oracle equivalence") {
  const int n = 4, k = 3;
  const Partition planted = Partition::contiguous(n, k);

  WeakPartition exact;
  for (const auto& cluster : planted.clusters()) exact.clusters.push_back(cluster);
  CHECK(closeness_weak(exact, planted, n).delta == 0.0);

  // N singletons: the optimal matching hits k distinct planted clusters.
  WeakPartition singletons;
  for (int v = 0; v < n * k; ++v) singletons.clusters.push_back({v});
  const Closeness c = closeness_weak(singletons, planted, n);
  CHECK(c.overlap == k);
  CHECK(c.delta == doctest::Approx(1.0 - 1.0 / n));

  for (int rep = 0; rep < 50; ++rep) {
    const WeakPartition w = testing::random_weak_partition(n, k, 900 + rep);
    const double exact_delta = testing::brute_force_weak_delta(w, planted);
    CHECK(closeness_weak(w, planted, n).delta == doctest::Approx(exact_delta).epsilon(1e-12));
  }
}

TEST_CASE("weak delta rejects oversized clusters") {
  const Partition planted = Partition::contiguous(2, 2);
  WeakPartition w;
  w.clusters = {{0, 1, 2}, {3}};
  CHECK_THROWS_AS(closeness_weak(w, planted, 2), std::invalid_argument);
}

TEST_CASE("cut cost counts between-label edges with multiplicity") {
  const Partition p = Partition::contiguous(2, 2);
  Graph g(4, false);
  g.add_edge(0, 1, 2);  // within
  CHECK(cut_cost(g, p) == 0);
  g.add_edge(0, 2, 3);  // between
  CHECK(cut_cost(g, p) == 3);

  // cut + within = |E| on random instances.
  auto [sg, planted] = sample_sbm(SbmParams{30, 3, 8.0, 2.0}, 5);
  std::int64_t within = 0;
  for (const Edge& e : sg.edges())
    if (planted.label(e.u) == planted.label(e.v)) within += e.mult;
  CHECK(cut_cost(sg, planted) + within == sg.edge_count());
}

TEST_CASE("alpha bound arithmetic") {
  BoundInputs in;
  in.params = SbmParams{100, 2, 30.0, 5.0};
  in.epsilon = 0.0;
  in.s = 1.0;

  // Independent arithmetic: c9 = 6*1.783 + 4, d = 35, gap = 25.
  const double expected = (6.0 * 1.783 + 4.0) * std::sqrt(35.0) / 25.0;
  CHECK(alpha_bound(in) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(alpha_bound(in) == doctest::Approx(3.4782).epsilon(1e-4));
  // Reported even when vacuous (> k-1 = 1).
  CHECK(alpha_bound(in) > in.params.k - 1);

  // Failure probability evaluator at s.
  const double N = 200.0;
  const double f = 2.0 * std::exp(-9.0 * 1.0 * N / (4.0 + 8.0 / std::sqrt(35.0)));
  CHECK(alpha_bound_failure_prob(in) == doctest::Approx(f).epsilon(1e-12));

  // Holding d fixed, the epsilon = 0 bound scales as 1/(a-b).
  BoundInputs narrow = in;
  narrow.params = SbmParams{100, 2, 32.5, 2.5};  // d = 35, gap = 30
  CHECK(alpha_bound(narrow) == doctest::Approx(expected * 25.0 / 30.0).epsilon(1e-12));
}

TEST_CASE("alpha bound rejects out-of-range parameters") {
  BoundInputs in;
  in.params = SbmParams{100, 2, 5.0, 5.0};
  CHECK_THROWS_AS(alpha_bound(in), std::invalid_argument);
  in.params = SbmParams{100, 2, 30.0, 5.0};
  in.s = 0.5;
  CHECK_THROWS_AS(alpha_bound(in), std::invalid_argument);
  in.s = 1.0;
  in.params = SbmParams{100, 2, 6.0, 1.0};  // d = 7 <= C0
  CHECK_THROWS_AS(alpha_bound(in), std::invalid_argument);
}

TEST_CASE("delta bound report values") {
  BoundInputs in;
  in.params = SbmParams{100, 2, 10.0, 2.0};
  in.epsilon = 0.0;
  in.s = 1.0;
  const BoundReport r = delta_bounds(in);

  // Planted-cut tail bound: b(k-1)N/2 + 2 sqrt(a+b(k-1)) N s.
  const double lemma27 = 2.0 * 1.0 * 200.0 / 2.0 + 2.0 * std::sqrt(12.0) * 200.0;
  CHECK(r.lemma27_cut_bound == doctest::Approx(lemma27).epsilon(1e-12));
  CHECK(r.lemma27_cut_bound == doctest::Approx(1585.64).epsilon(1e-4));

  // Theorem-5 raw expression reduces to sqrt(d)/gap at epsilon = 0.
  CHECK(r.theorem5_delta == doctest::Approx(std::sqrt(12.0) / 8.0).epsilon(1e-12));

  // Empirical planted cut stays under the bound over many seeds.
  int violations = 0;
  const int runs = 300;
  for (int s = 0; s < runs; ++s) {
    auto [g, planted] = sample_sbm(in.params, 40000 + s);
    if (static_cast<double>(cut_cost(g, planted)) > r.lemma27_cut_bound) ++violations;
  }
  CHECK(violations == 0);  // failure probability is ~e^{-430}
}

TEST_CASE("theorem 6 delta0 floor flags the vacuous regime") {
  BoundInputs in;
  in.params = SbmParams{200, 2, 40.0, 4.0};
  const double floor = 2.0 * std::exp(-36.0 * 36.0 / 4000.0);
  CHECK(in.delta0_floor() == doctest::Approx(floor).epsilon(1e-12));
  CHECK(in.delta0_floor() == doctest::Approx(1.4465).epsilon(1e-4));
  const BoundReport r = delta_bounds(in);
  CHECK(r.theorem6_delta0_vacuous);
  CHECK(r.theorem6_delta_composed == doctest::Approx(4.0 * floor).epsilon(1e-12));
}

TEST_CASE("kl divergence basics") {
  DiscreteDistribution uniform{{0.25, 0.25, 0.25, 0.25}};
  DiscreteDistribution point{{1.0, 0.0, 0.0, 0.0}};
  uniform.validate();
  point.validate();

  CHECK(kl_divergence(uniform, uniform) == 0.0);
  CHECK(kl_divergence(point, uniform) == doctest::Approx(2.0));  // log2 4

  DiscreteDistribution narrow{{0.5, 0.5, 0.0, 0.0}};
  CHECK(std::isinf(kl_divergence(uniform, narrow)));
  CHECK(kl_divergence(narrow, uniform) == doctest::Approx(1.0));
}

TEST_CASE("kl divergence is nonnegative, zero only at equality") {
  Rng rng(4242);
  for (int rep = 0; rep < 1000; ++rep) {
    const int size = 2 + static_cast<int>(rng.next_below(5));
    DiscreteDistribution q, p;
    double qs = 0, ps = 0;
    for (int i = 0; i < size; ++i) {
      q.mass.push_back(0.01 + rng.next_double());
      p.mass.push_back(0.01 + rng.next_double());
      qs += q.mass.back();
      ps += p.mass.back();
    }
    for (int i = 0; i < size; ++i) {
      q.mass[i] /= qs;
      p.mass[i] /= ps;
    }
    CHECK(kl_divergence(q, p) >= -1e-10);
    CHECK(kl_divergence(q, q) <= 1e-10);
  }
}

TEST_CASE("log-sum inequality over random partitions") {
  Rng rng(910);
  for (int rep = 0; rep < 1000; ++rep) {
    const int size = 3 + static_cast<int>(rng.next_below(4));
    DiscreteDistribution q, p;
    double qs = 0, ps = 0;
    for (int i = 0; i < size; ++i) {
      q.mass.push_back(0.01 + rng.next_double());
      p.mass.push_back(0.01 + rng.next_double());
      qs += q.mass.back();
      ps += p.mass.back();
    }
    for (int i = 0; i < size; ++i) {
      q.mass[i] /= qs;
      p.mass[i] /= ps;
    }
    // Random partition of the support into up to 3 events.
    std::vector<std::vector<int>> events(1 + rng.next_below(3));
    for (int i = 0; i < size; ++i)
      events[rng.next_below(events.size())].push_back(i);
    std::erase_if(events, [](const auto& e) { return e.empty(); });

    const double dkl = kl_divergence(q, p);
    CHECK(dkl >= kl_partition_lower_bound(q, p, events) - 1e-12);
  }
}

TEST_CASE("kl event bound: closed-form corners") {
  // dkl = 0, P(E) = e^{-10}: the mass branch e sqrt(2) e^{-5} wins.
  const double p_event = std::exp(-10.0);
  CHECK(kl_event_bound(0.0, p_event) ==
        doctest::Approx(std::exp(1.0) * std::sqrt(2.0) * std::exp(-5.0)).epsilon(1e-12));
  // P(E) = 1: the mass branch is e sqrt(2) >= 1, bounding any Q(E).
  CHECK(kl_event_bound(0.0, 1.0) >= 1.0);
  CHECK(kl_event_bound(0.0, 1.0) == doctest::Approx(std::exp(1.0) * std::sqrt(2.0)));
}

TEST_CASE("kl event bound holds on a coarse 3-point grid") {
  // Unit-test-sized sweep; the acceptance suite runs the full 0.02 grid.
  const int steps = 10;  // 0.1 grid
  std::vector<DiscreteDistribution> grid;
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; i + j <= steps; ++j)
      grid.push_back(DiscreteDistribution{
          {i / double(steps), j / double(steps), (steps - i - j) / double(steps)}});

  const std::vector<std::vector<int>> events{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
  for (const auto& q : grid)
    for (const auto& p : grid) {
      const double dkl = kl_divergence(q, p);
      for (const auto& event : events) {
        const double qe = q.event_probability(event);
        const double pe = p.event_probability(event);
        CHECK(qe <= kl_event_bound(dkl, pe) + 1e-12);
      }
    }
}

TEST_CASE("grothendieck residual of the planted integral embedding") {
  const SbmParams params{40, 2, 10.0, 2.0};
  auto [g, planted] = sample_sbm(params, 17);
  const Embedding integral = planted_integral_embedding(planted);

  const DeviationCheck check = grothendieck_residual(g, planted, params, integral, 2.0);
  // Between-pairs have distance^2 = 2, within-pairs 0, so the sum reduces
  // to 2 (cut(G) - E[cut]).
  const double expected_cut = params.b * (params.k - 1) * params.total_vertices() / 2.0;
  const double identity = 2.0 * std::abs(cut_cost(g, planted) - expected_cut);
  CHECK(check.residual == doctest::Approx(identity).epsilon(1e-9));
  CHECK(check.bound ==
        doctest::Approx(6.0 * 1.783 * std::sqrt(12.0) * 80.0 * 2.0).epsilon(1e-12));
}

TEST_CASE("grothendieck residual agrees with a direct pair sum") {
  const SbmParams params{6, 2, 4.0, 1.0};
  auto [g, planted] = sample_sbm(params, 23);
  const Embedding e = testing::random_feasible_embedding(params.n, params.k, 31);

  double direct = 0.0;
  const int N = params.total_vertices();
  for (int u = 0; u < N; ++u)
    for (int v = u + 1; v < N; ++v) {
      const double expected =
          planted.label(u) == planted.label(v) ? params.a / params.n : params.b / params.n;
      const double indicator = g.has_edge(u, v) ? 1.0 : 0.0;
      direct += (indicator - expected) * (e.vectors.row(u) - e.vectors.row(v)).squaredNorm();
    }
  const DeviationCheck check = grothendieck_residual(g, planted, params, e, 1.0);
  CHECK(check.residual == doctest::Approx(std::abs(direct)).epsilon(1e-9));
}
