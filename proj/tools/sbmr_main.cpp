// Command-line harness: generation -> corruption -> solve -> recover ->
// boost -> evaluation, plus the lower-bound evaluators. Stages communicate
// through the documented file formats so each one can be re-run alone.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sbmr/boosting.hpp"
#include "sbmr/errors.hpp"
#include "sbmr/lower_bounds.hpp"
#include "sbmr/metrics.hpp"
#include "sbmr/pipeline.hpp"
#include "sbmr/recovery.hpp"
#include "sbmr/rng.hpp"
#include "sbmr/sbm.hpp"
#include "sbmr/sdp.hpp"

namespace {

using nlohmann::json;

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << j.dump(2) << '\n';
  }
}

std::vector<std::uint64_t> parse_seed_range(const std::string& spec) {
  const auto dots = spec.find("..");
  std::vector<std::uint64_t> seeds;
  if (dots == std::string::npos) {
    seeds.push_back(std::stoull(spec));
    return seeds;
  }
  const auto from = std::stoull(spec.substr(0, dots));
  const auto to = std::stoull(spec.substr(dots + 2));
  for (auto s = from; s <= to; ++s) seeds.push_back(s);
  return seeds;
}

int env_threads(int cli_threads) {
  if (const char* env = std::getenv("SBMR_THREADS")) return std::atoi(env);
  return cli_threads;
}

std::string env_out(const std::string& cli_out) {
  if (const char* env = std::getenv("SBMR_OUT")) return env;
  return cli_out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robust SBM partial recovery pipeline"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "sample an SBM instance");
  int gen_n = 100, gen_k = 2;
  double gen_a = 10.0, gen_b = 2.0;
  std::uint64_t gen_seed = 1;
  bool gen_poisson = false;
  std::string gen_graph_out = "graph.txt", gen_partition_out = "planted.txt";
  generate->add_option("--n", gen_n, "vertices per cluster");
  generate->add_option("--k", gen_k, "cluster count");
  generate->add_option("--a", gen_a, "within-cluster degree parameter");
  generate->add_option("--b", gen_b, "between-cluster degree parameter");
  generate->add_option("--seed", gen_seed, "64-bit seed");
  generate->add_flag("--poisson", gen_poisson, "Poisson multigraph model");
  generate->add_option("--out-graph", gen_graph_out);
  generate->add_option("--out-partition", gen_partition_out);

  // corrupt
  auto* corrupt = app.add_subcommand("corrupt", "apply adversarial edits");
  std::string cor_graph = "graph.txt", cor_partition = "planted.txt", cor_out = "corrupted.txt";
  int cor_n = 100, cor_k = 2;
  double cor_a = 10.0, cor_b = 2.0;
  bool cor_monotone = false;
  std::int64_t cor_add = 0, cor_remove = 0;
  double cor_eps = 0.0, cor_eps1 = -1.0, cor_eps2 = 0.0;
  std::string cor_strategy = "uniform";
  std::uint64_t cor_seed = 1;
  corrupt->add_option("--graph", cor_graph);
  corrupt->add_option("--partition", cor_partition);
  corrupt->add_option("--n", cor_n);
  corrupt->add_option("--k", cor_k);
  corrupt->add_option("--a", cor_a);
  corrupt->add_option("--b", cor_b);
  corrupt->add_flag("--monotone", cor_monotone, "monotone edits instead of outliers");
  corrupt->add_option("--add-within", cor_add, "monotone: within-cluster edges to add");
  corrupt->add_option("--remove-between", cor_remove, "monotone: between edges to remove");
  corrupt->add_option("--epsilon", cor_eps, "outlier budget as fraction of m");
  corrupt->add_option("--epsilon1", cor_eps1, "between-additions fraction (default: epsilon)");
  corrupt->add_option("--epsilon2", cor_eps2, "within-removals fraction");
  corrupt->add_option("--strategy", cor_strategy, "uniform|degree-targeted|concentrated");
  corrupt->add_option("--seed", cor_seed);
  corrupt->add_option("--out", cor_out);

  // solve
  auto* solve = app.add_subcommand("solve", "solve the SDP relaxation");
  std::string sol_graph = "graph.txt", sol_out = "embedding.txt", sol_report;
  int sol_n = 100, sol_k = 2;
  double sol_a = 10.0, sol_b = 2.0;
  sbmr::SolverConfig sol_cfg;
  std::uint64_t sol_seed = 1;
  solve->add_option("--graph", sol_graph);
  solve->add_option("--n", sol_n);
  solve->add_option("--k", sol_k);
  solve->add_option("--a", sol_a);
  solve->add_option("--b", sol_b);
  solve->add_option("--rank", sol_cfg.rank);
  solve->add_option("--max-iterations", sol_cfg.max_iterations);
  solve->add_option("--restarts", sol_cfg.restarts);
  solve->add_option("--tau-feas", sol_cfg.tau_feas);
  solve->add_option("--tau-obj", sol_cfg.tau_obj);
  solve->add_option("--seed", sol_seed);
  solve->add_option("--out-embedding", sol_out);
  solve->add_option("--report", sol_report, "write solve report JSON here");

  // recover
  auto* recover = app.add_subcommand("recover", "greedy recovery from an embedding");
  std::string rec_embedding = "embedding.txt", rec_out = "recovered.txt", rec_planted,
      rec_report;
  int rec_n = 100, rec_k = 2;
  double rec_rho = 0.27;
  recover->add_option("--embedding", rec_embedding);
  recover->add_option("--n", rec_n);
  recover->add_option("--k", rec_k);
  recover->add_option("--rho", rec_rho);
  recover->add_option("--out-partition", rec_out);
  recover->add_option("--planted", rec_planted, "optional planted partition for deltas");
  recover->add_option("--report", rec_report);

  // boost
  auto* boost_cmd = app.add_subcommand("boost", "edge-splitting majority-vote pipeline");
  std::string bst_graph = "graph.txt", bst_base, bst_out = "boosted.txt", bst_report;
  int bst_n = 100, bst_k = 2;
  double bst_threshold = 0.0, bst_rho = 0.27;
  std::uint64_t bst_seed = 1;
  bool bst_random_halves = false;
  boost_cmd->add_option("--graph", bst_graph);
  boost_cmd->add_option("--base-partition", bst_base,
                        "skip the base stage and boost this partition");
  boost_cmd->add_option("--n", bst_n);
  boost_cmd->add_option("--k", bst_k);
  boost_cmd->add_option("--rho", bst_rho, "recovery rho for the base stage");
  boost_cmd->add_option("--threshold", bst_threshold);
  boost_cmd->add_flag("--random-halves", bst_random_halves);
  boost_cmd->add_option("--seed", bst_seed);
  boost_cmd->add_option("--out-partition", bst_out);
  boost_cmd->add_option("--report", bst_report);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "delta-closeness and bound reports");
  std::string eval_partition = "recovered.txt", eval_planted = "planted.txt", eval_graph,
      eval_out;
  int eval_n = 0, eval_k = 0;
  double eval_a = 0.0, eval_b = 0.0, eval_eps = 0.0, eval_s = 2.0, eval_eta = 0.0;
  evaluate->add_option("--partition", eval_partition);
  evaluate->add_option("--planted", eval_planted);
  evaluate->add_option("--graph", eval_graph, "optional graph for cut costs");
  evaluate->add_option("--n", eval_n);
  evaluate->add_option("--k", eval_k);
  evaluate->add_option("--a", eval_a);
  evaluate->add_option("--b", eval_b);
  evaluate->add_option("--epsilon", eval_eps);
  evaluate->add_option("--s", eval_s);
  evaluate->add_option("--eta", eval_eta);
  evaluate->add_option("--out", eval_out);

  // lowerbound
  auto* lowerbound = app.add_subcommand("lowerbound", "Poisson lower-bound machinery");
  std::vector<double> lb_coupling, lb_game, lb_kappa;
  std::int64_t lb_trials = 100000, lb_draws = 100000;
  std::uint64_t lb_seed = 1;
  double lb_a = 0.0, lb_b = 0.0, lb_eps = 0.0, lb_delta = 0.1;
  std::string lb_graph, lb_partition, lb_out_graph, lb_out;
  double lb_rho = 0.1;
  int lb_n = 0;
  lowerbound->add_option("--coupling", lb_coupling, "two rates: exact coupling overlap")
      ->expected(2);
  lowerbound->add_option("--game", lb_game, "two rates: Monte Carlo distinguishing game")
      ->expected(2);
  lowerbound->add_option("--kappa", lb_kappa, "two rates: sample capped increments")
      ->expected(2);
  lowerbound->add_option("--trials", lb_trials);
  lowerbound->add_option("--draws", lb_draws);
  lowerbound->add_option("--seed", lb_seed);
  lowerbound->add_option("--a", lb_a);
  lowerbound->add_option("--b", lb_b);
  lowerbound->add_option("--epsilon", lb_eps);
  lowerbound->add_option("--delta", lb_delta);
  lowerbound->add_option("--graph", lb_graph, "Poisson multigraph for the adversary");
  lowerbound->add_option("--partition", lb_partition);
  lowerbound->add_option("--n", lb_n);
  lowerbound->add_option("--rho-fraction", lb_rho);
  lowerbound->add_option("--out-graph", lb_out_graph);
  lowerbound->add_option("--out", lb_out);

  // run
  auto* run = app.add_subcommand("run", "full pipeline from a config file");
  std::string run_config, run_out, run_seeds, run_format = "json";
  int run_threads = 1;
  run->add_option("--config", run_config)->required();
  run->add_option("--seed,--seeds", run_seeds, "seed or A..B range (overrides config)");
  run->add_option("--out", run_out, "output file (default stdout)");
  run->add_option("--threads", run_threads);
  run->add_option("--format", run_format, "json|csv");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "cartesian sweep with resumable row store");
  std::string sweep_config, sweep_out = "sweep-out";
  int sweep_threads = 1;
  sweep_cmd->add_option("--config", sweep_config)->required();
  sweep_cmd->add_option("--out", sweep_out, "output directory");
  sweep_cmd->add_option("--threads", sweep_threads);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) {
      const sbmr::SbmParams params{gen_n, gen_k, gen_a, gen_b};
      auto [g, planted] = gen_poisson ? sbmr::sample_poisson_sbm(params, gen_seed)
                                      : sbmr::sample_sbm(params, gen_seed);
      sbmr::write_graph_file(gen_graph_out, g);
      sbmr::write_partition_file(gen_partition_out, planted);
      std::cout << "wrote " << gen_graph_out << " (" << g.edge_count() << " edges) and "
                << gen_partition_out << '\n';
    } else if (*corrupt) {
      const sbmr::SbmParams params{cor_n, cor_k, cor_a, cor_b};
      const sbmr::Graph g = sbmr::read_graph_file(cor_graph);
      const sbmr::Partition planted = sbmr::read_partition_file(cor_partition, cor_k);
      sbmr::Graph out;
      if (cor_monotone) {
        out = sbmr::apply_monotone_adversary(g, planted, cor_add, cor_remove, cor_seed);
      } else {
        sbmr::AdversaryBudget budget;
        budget.epsilon = cor_eps;
        budget.epsilon1 = cor_eps1 < 0 ? cor_eps : cor_eps1;
        budget.epsilon2 = cor_eps2;
        out = sbmr::apply_outlier_adversary(g, planted, budget, params,
                                            sbmr::parse_strategy(cor_strategy), cor_seed);
      }
      sbmr::write_graph_file(cor_out, out);
      std::cout << "wrote " << cor_out << " (" << out.edge_count() << " edges, input "
                << g.edge_count() << ")\n";
    } else if (*solve) {
      const sbmr::SbmParams params{sol_n, sol_k, sol_a, sol_b};
      const sbmr::Graph g = sbmr::read_graph_file(sol_graph);
      sol_cfg.seed = sol_seed;
      const sbmr::SolveResult result = sbmr::solve_sdp(g, params, sol_cfg);
      sbmr::write_embedding_file(sol_out, result.embedding);
      json report{{"objective", result.objective},
                  {"converged", result.converged},
                  {"restarts_used", result.restarts_used},
                  {"feasibility", sbmr::feasibility_to_json(result.feasibility)}};
      if (!sol_report.empty()) emit(report, sol_report);
      std::cout << "wrote " << sol_out << " (objective " << result.objective << ")\n";
    } else if (*recover) {
      const sbmr::Embedding e = sbmr::read_embedding_file(rec_embedding);
      const sbmr::WeakPartition weak = sbmr::greedy_recover(e, rec_n, rec_rho);
      const sbmr::Partition strong = sbmr::weak_to_strong(weak, rec_n, rec_k);
      sbmr::write_partition_file(rec_out, strong);
      json report{{"weak_cluster_count", weak.cluster_count()}, {"rho", rec_rho}};
      if (!rec_planted.empty()) {
        const sbmr::Partition planted = sbmr::read_partition_file(rec_planted, rec_k);
        report["weak"] = sbmr::closeness_to_json(sbmr::closeness_weak(weak, planted, rec_n));
        report["strong"] = sbmr::closeness_to_json(sbmr::closeness_strong(strong, planted));
      }
      if (!rec_report.empty()) emit(report, rec_report);
      std::cout << "wrote " << rec_out << " (" << weak.cluster_count() << " weak clusters)\n";
    } else if (*boost_cmd) {
      const sbmr::Graph g = sbmr::read_graph_file(bst_graph);
      const sbmr::EdgeSplit split = sbmr::split_edges(g, sbmr::mix_seed(bst_seed, 0xA4));
      sbmr::Partition base;
      if (!bst_base.empty()) {
        base = sbmr::read_partition_file(bst_base, bst_k);
      } else {
        sbmr::SolverConfig cfg;
        cfg.seed = sbmr::mix_seed(bst_seed, 0xA5);
        auto [a_est, b_est] = sbmr::estimate_rates(split.e1, sbmr::Partition::contiguous(bst_n, bst_k), bst_n, bst_k);
        const sbmr::SbmParams params{bst_n, bst_k, std::max(a_est, b_est), std::min(a_est, b_est)};
        const sbmr::SolveResult solved = sbmr::solve_sdp(split.e1, params, cfg);
        const sbmr::WeakPartition weak = sbmr::greedy_recover(solved.embedding, bst_n, bst_rho);
        base = sbmr::weak_to_strong(weak, bst_n, bst_k);
      }
      sbmr::BoostConfig cfg;
      cfg.threshold = bst_threshold;
      cfg.random_halves = bst_random_halves;
      cfg.seed = sbmr::mix_seed(bst_seed, 0xA6);
      const sbmr::Partition boosted = sbmr::boost_partition(split.e2, base, bst_n, bst_k, cfg);
      sbmr::write_partition_file(bst_out, boosted);
      if (!bst_report.empty()) {
        json report{{"e1_edges", split.e1.edge_count()}, {"e2_edges", split.e2.edge_count()}};
        emit(report, bst_report);
      }
      std::cout << "wrote " << bst_out << '\n';
    } else if (*evaluate) {
      const sbmr::Partition planted = sbmr::read_partition_file(eval_planted, eval_k);
      const sbmr::Partition p = sbmr::read_partition_file(eval_partition, planted.k());
      const sbmr::Closeness strong = sbmr::closeness_strong(p, planted);
      json report{{"strong", sbmr::closeness_to_json(strong)}};
      if (!eval_graph.empty()) {
        const sbmr::Graph g = sbmr::read_graph_file(eval_graph);
        report["plant_cut"] = sbmr::cut_cost(g, planted);
        report["partition_cut"] = sbmr::cut_cost(g, p);
      }
      if (eval_n > 0 && eval_k > 0 && eval_a > eval_b) {
        sbmr::BoundInputs inputs;
        inputs.params = sbmr::SbmParams{eval_n, eval_k, eval_a, eval_b};
        inputs.epsilon = eval_eps;
        inputs.s = eval_s;
        inputs.eta = eval_eta;
        report["bounds"] = sbmr::bounds_to_json(sbmr::delta_bounds(inputs));
      }
      emit(report, eval_out);
    } else if (*lowerbound) {
      json report;
      if (lb_coupling.size() == 2) {
        report["coupling_overlap"] =
            sbmr::coupling_overlap(sbmr::PoissonPair{lb_coupling[0], lb_coupling[1]});
      }
      if (lb_game.size() == 2) {
        const sbmr::GameResult res =
            sbmr::distinguishing_game(lb_game[0], lb_game[1], lb_trials, lb_seed);
        report["game"] = {{"error_rate", res.error_rate},
                          {"half_width", res.half_width},
                          {"eta", res.eta},
                          {"lemma32_floor", res.lemma32_floor},
                          {"trials", res.trials}};
      }
      if (lb_kappa.size() == 2) {
        json draws = json::array();
        for (std::int64_t i = 0; i < std::min<std::int64_t>(lb_draws, 32); ++i)
          draws.push_back(sbmr::sample_kappa_hat(lb_kappa[0], lb_kappa[1], 0,
                                                 sbmr::mix_seed(lb_seed, i)));
        report["kappa_samples"] = draws;
        report["kappa_cap"] = static_cast<std::int64_t>(2.0 * (lb_kappa[1] - lb_kappa[0]));
      }
      if (lb_a > 0.0 || lb_b > 0.0) {
        const sbmr::SbmParams params{lb_n > 0 ? lb_n : 100, 2, lb_a, lb_b};
        const sbmr::LbBoundReport b = sbmr::lb_bound_values(params, lb_eps, lb_delta);
        report["bounds"] = {{"gap", b.gap},
                            {"bound10_rhs", b.bound10_rhs},
                            {"bound11_rhs", b.bound11_rhs},
                            {"bound10_blocks", b.bound10_blocks},
                            {"bound11_blocks", b.bound11_blocks}};
      }
      if (!lb_graph.empty()) {
        const sbmr::Graph g = sbmr::read_graph_file(lb_graph);
        const sbmr::Partition planted =
            sbmr::read_partition_file(lb_partition.empty() ? "planted.txt" : lb_partition, 2);
        const int n = lb_n > 0 ? lb_n : g.vertex_count() / 2;
        const sbmr::SbmParams params{n, 2, lb_a, lb_b};
        sbmr::LbAdversaryConfig cfg;
        cfg.rho_fraction = lb_rho;
        cfg.seed = lb_seed;
        const sbmr::Graph out = sbmr::lb_adversary(g, planted, params, cfg);
        if (!lb_out_graph.empty()) sbmr::write_graph_file(lb_out_graph, out);
        report["adversary"] = {{"input_edges", g.edge_count()},
                               {"output_edges", out.edge_count()}};
      }
      emit(report, lb_out);
    } else if (*run) {
      std::ifstream in(run_config);
      if (!in) throw std::runtime_error("cannot open config: " + run_config);
      sbmr::ExperimentConfig cfg = sbmr::ExperimentConfig::from_json(json::parse(in));
      if (!run_seeds.empty()) cfg.seeds = parse_seed_range(run_seeds);
      const sbmr::RunRecord record = sbmr::run_pipeline(cfg, env_threads(run_threads));
      if (run_format == "csv") {
        std::ostringstream csv;
        csv << sbmr::csv_header() << '\n';
        for (const auto& row : record.rows)
          csv << sbmr::csv_row(record.config_hash, cfg, row) << '\n';
        const std::string out_path = env_out(run_out);
        if (out_path.empty()) {
          std::cout << csv.str();
        } else {
          std::ofstream out(out_path, std::ios::binary);
          out << csv.str();
        }
      } else {
        emit(record.to_json(), env_out(run_out));
      }
      int failures = 0;
      for (const auto& row : record.rows)
        if (!row.ok) {
          std::cerr << row.error << '\n';
          ++failures;
        }
      if (failures > 0) return 1;
    } else if (*sweep_cmd) {
      std::ifstream in(sweep_config);
      if (!in) throw std::runtime_error("cannot open config: " + sweep_config);
      const json j = json::parse(in);
      const sbmr::ExperimentConfig base = sbmr::ExperimentConfig::from_json(j);
      const sbmr::SweepGrid grid =
          j.contains("grid") ? sbmr::SweepGrid::from_json(j["grid"]) : sbmr::SweepGrid{};
      const sbmr::SweepResult result =
          sbmr::sweep(base, grid, env_out(sweep_out), env_threads(sweep_threads));
      std::cout << "sweep: " << result.executed << " executed, " << result.skipped
                << " skipped, " << result.failed << " failed; csv at "
                << env_out(sweep_out) << "/sweep.csv\n";
      if (result.failed > 0) return 1;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
