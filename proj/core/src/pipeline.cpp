#include "sbmr/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sbmr/rng.hpp"

namespace sbmr {

namespace {

using nlohmann::json;

// Seed-stream tags for the pipeline stages.
constexpr std::uint64_t kSampleStream = 0xA1;
constexpr std::uint64_t kMonotoneStream = 0xA2;
constexpr std::uint64_t kOutlierStream = 0xA3;
constexpr std::uint64_t kSplitStream = 0xA4;
constexpr std::uint64_t kSolverStream = 0xA5;
constexpr std::uint64_t kBoostStream = 0xA6;

std::string adversary_name(AdversaryType t) {
  switch (t) {
    case AdversaryType::kNone: return "none";
    case AdversaryType::kMonotone: return "monotone";
    case AdversaryType::kOutlier: return "outlier";
    case AdversaryType::kBoth: return "both";
  }
  return "?";
}

AdversaryType parse_adversary(const std::string& s) {
  if (s == "none") return AdversaryType::kNone;
  if (s == "monotone") return AdversaryType::kMonotone;
  if (s == "outlier") return AdversaryType::kOutlier;
  if (s == "both") return AdversaryType::kBoth;
  throw std::invalid_argument("unknown adversary type: " + s);
}

}  // namespace

void ExperimentConfig::validate() const {
  params.validate();
  budget.validate();
  solver.validate();
  if (seeds.empty()) throw std::invalid_argument("ExperimentConfig: at least one seed");
  if (!(recovery_rho > 0.0 && recovery_rho < 1.0 / 3.0))
    throw std::invalid_argument("ExperimentConfig: rho must lie in (0, 1/3)");
}

json ExperimentConfig::to_json() const {
  json j;
  j["params"] = {{"n", params.n}, {"k", params.k}, {"a", params.a}, {"b", params.b}};
  j["model"] = model == GraphModel::kBernoulli ? "bernoulli" : "poisson";
  j["adversary"] = {{"type", adversary_name(adversary)},
                    {"epsilon", budget.epsilon},
                    {"epsilon1", budget.epsilon1},
                    {"epsilon2", budget.epsilon2},
                    {"monotone_add", budget.monotone_add},
                    {"monotone_remove", budget.monotone_remove},
                    {"strategy", strategy_name(strategy)}};
  j["solver"] = {{"rank", solver.rank},
                 {"max_iterations", solver.max_iterations},
                 {"restarts", solver.restarts},
                 {"step_size", solver.step_size},
                 {"step_decay", solver.step_decay},
                 {"penalty_nonneg", solver.penalty_nonneg},
                 {"multiplier_interval", solver.multiplier_interval},
                 {"polish_fraction", solver.polish_fraction},
                 {"polish_cycles", solver.polish_cycles},
                 {"tau_feas", solver.tau_feas},
                 {"tau_obj", solver.tau_obj}};
  j["recovery"] = {{"rho", recovery_rho}};
  j["boost"] = {{"enabled", boost_enabled},
                {"threshold", boost.threshold},
                {"random_halves", boost.random_halves}};
  j["bounds"] = {{"s", bounds_s}, {"eta", bounds_eta}};
  j["seeds"] = seeds;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig cfg;
  const auto& p = j.at("params");
  cfg.params = SbmParams{p.at("n").get<int>(), p.at("k").get<int>(), p.at("a").get<double>(),
                         p.at("b").get<double>()};
  if (j.contains("model"))
    cfg.model = j["model"] == "poisson" ? GraphModel::kPoisson : GraphModel::kBernoulli;
  if (j.contains("adversary")) {
    const auto& adv = j["adversary"];
    cfg.adversary = parse_adversary(adv.value("type", "none"));
    cfg.budget.epsilon = adv.value("epsilon", 0.0);
    cfg.budget.epsilon1 = adv.value("epsilon1", cfg.budget.epsilon);
    cfg.budget.epsilon2 = adv.value("epsilon2", 0.0);
    cfg.budget.monotone_add = adv.value("monotone_add", std::int64_t{0});
    cfg.budget.monotone_remove = adv.value("monotone_remove", std::int64_t{0});
    cfg.strategy = parse_strategy(adv.value("strategy", "uniform"));
  }
  if (j.contains("solver")) {
    const auto& s = j["solver"];
    cfg.solver.rank = s.value("rank", 0);
    cfg.solver.max_iterations = s.value("max_iterations", cfg.solver.max_iterations);
    cfg.solver.restarts = s.value("restarts", cfg.solver.restarts);
    cfg.solver.step_size = s.value("step_size", 0.0);
    cfg.solver.step_decay = s.value("step_decay", cfg.solver.step_decay);
    cfg.solver.penalty_spread = s.value("penalty_spread", 0.0);
    cfg.solver.penalty_nonneg = s.value("penalty_nonneg", 0.0);
    cfg.solver.penalty_growth = s.value("penalty_growth", cfg.solver.penalty_growth);
    cfg.solver.penalty_interval = s.value("penalty_interval", cfg.solver.penalty_interval);
    cfg.solver.tau_feas = s.value("tau_feas", cfg.solver.tau_feas);
    cfg.solver.tau_obj = s.value("tau_obj", cfg.solver.tau_obj);
  }
  if (j.contains("recovery")) cfg.recovery_rho = j["recovery"].value("rho", 0.27);
  if (j.contains("boost")) {
    cfg.boost_enabled = j["boost"].value("enabled", false);
    cfg.boost.threshold = j["boost"].value("threshold", 0.0);
    cfg.boost.random_halves = j["boost"].value("random_halves", false);
  }
  if (j.contains("bounds")) {
    cfg.bounds_s = j["bounds"].value("s", 2.0);
    cfg.bounds_eta = j["bounds"].value("eta", 0.0);
  }
  if (j.contains("seeds")) {
    if (j["seeds"].is_array()) {
      cfg.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    } else {
      const auto from = j["seeds"].at("from").get<std::uint64_t>();
      const auto to = j["seeds"].at("to").get<std::uint64_t>();
      for (std::uint64_t s = from; s <= to; ++s) cfg.seeds.push_back(s);
    }
  }
  return cfg;
}

std::string ExperimentConfig::hash() const {
  json j = to_json();
  j.erase("seeds");
  const std::string canonical = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

json feasibility_to_json(const FeasibilityReport& f) {
  return {{"unit_violation", f.unit_violation},
          {"spread_violation", f.spread_violation},
          {"spread_target", f.spread_target},
          {"min_inner_product", f.min_inner_product}};
}

json bounds_to_json(const BoundReport& b) {
  return {{"theorem9_alpha_bound", b.theorem9_alpha_bound},
          {"theorem9_failure_prob", b.theorem9_failure_prob},
          {"corollary11_alpha_bound", b.corollary11_alpha_bound},
          {"corollary11_failure_prob", b.corollary11_failure_prob},
          {"theorem5_delta", b.theorem5_delta},
          {"theorem5_delta_composed", b.theorem5_delta_composed},
          {"theorem5_delta_prime", b.theorem5_delta_prime},
          {"theorem5_delta_prime_composed", b.theorem5_delta_prime_composed},
          {"theorem6_delta0_floor", b.theorem6_delta0_floor},
          {"theorem6_delta", b.theorem6_delta},
          {"theorem6_delta_composed", b.theorem6_delta_composed},
          {"theorem6_delta0_vacuous", b.theorem6_delta0_vacuous},
          {"theorem2_condition_lhs", b.theorem2_condition_lhs},
          {"lemma27_cut_bound", b.lemma27_cut_bound},
          {"lemma27_failure_prob", b.lemma27_failure_prob},
          {"degree_regime_ok", b.degree_regime_ok},
          {"boost_degree_regime_ok", b.boost_degree_regime_ok},
          {"eta_in_range", b.eta_in_range}};
}

json closeness_to_json(const Closeness& c) {
  return {{"delta", c.delta}, {"overlap", c.overlap}, {"sigma", c.sigma}};
}

RecoveryReport run_single_seed(const ExperimentConfig& cfg, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  RecoveryReport row;
  row.seed = seed;

  std::string stage = "sample";
  try {
    const int n = cfg.params.n, k = cfg.params.k;

    auto [g0, planted] = cfg.model == GraphModel::kBernoulli
                             ? sample_sbm(cfg.params, mix_seed(seed, kSampleStream))
                             : sample_poisson_sbm(cfg.params, mix_seed(seed, kSampleStream));
    if (cfg.model == GraphModel::kPoisson) g0 = flatten_to_simple(g0);

    stage = "corrupt";
    Graph g = g0;
    if (cfg.adversary == AdversaryType::kMonotone || cfg.adversary == AdversaryType::kBoth)
      g = apply_monotone_adversary(g, planted, cfg.budget.monotone_add,
                                   cfg.budget.monotone_remove, mix_seed(seed, kMonotoneStream));
    if (cfg.adversary == AdversaryType::kOutlier || cfg.adversary == AdversaryType::kBoth)
      g = apply_outlier_adversary(g, planted, cfg.budget, cfg.params, cfg.strategy,
                                  mix_seed(seed, kOutlierStream));

    stage = "split";
    EdgeSplit split;
    const Graph* base_graph = &g;
    if (cfg.boost_enabled) {
      split = split_edges(g, mix_seed(seed, kSplitStream));
      base_graph = &split.e1;
    }

    stage = "solve";
    SolverConfig solver_cfg = cfg.solver;
    solver_cfg.seed = mix_seed(seed, kSolverStream);
    const SolveResult solved = solve_sdp(*base_graph, cfg.params, solver_cfg);

    stage = "recover";
    const WeakPartition weak = greedy_recover(solved.embedding, n, cfg.recovery_rho);
    const Partition strong = weak_to_strong(weak, n, k);

    stage = "boost";
    Partition final_partition = strong;
    if (cfg.boost_enabled) {
      BoostConfig boost_cfg = cfg.boost;
      boost_cfg.seed = mix_seed(seed, kBoostStream);
      final_partition = boost_partition(split.e2, strong, n, k, boost_cfg);
    }

    stage = "evaluate";
    const Closeness weak_close = closeness_weak(weak, planted, n);
    const Closeness strong_close = closeness_strong(strong, planted);
    const Closeness final_close =
        cfg.boost_enabled ? closeness_strong(final_partition, planted) : strong_close;
    const SdpDiagnostics diag = compute_diagnostics(solved.embedding, planted, *base_graph);
    const CoreReport cores =
        compute_cores(solved.embedding, planted, CoreParams{cfg.recovery_rho});

    row.delta_weak = weak_close.delta;
    row.delta_strong = strong_close.delta;
    row.delta_final = final_close.delta;

    json r;
    r["seed"] = seed;
    r["config_hash"] = cfg.hash();
    r["delta_weak"] = weak_close.delta;
    r["delta_strong"] = strong_close.delta;
    r["delta_final"] = final_close.delta;
    r["matching"] = strong_close.sigma;
    r["weak_matching"] = weak_close.sigma;
    r["weak_cluster_count"] = weak.cluster_count();
    r["alpha"] = diag.alpha;
    r["beta"] = diag.beta;
    r["objective"] = solved.objective;
    r["plant_cut"] = cut_cost(g, planted);
    r["plant_cut_solved_graph"] = cut_cost(*base_graph, planted);
    r["edge_count"] = g.edge_count();
    r["sdp_converged"] = solved.converged;
    r["feasibility"] = feasibility_to_json(solved.feasibility);
    r["core_sizes"] = cores.core_sizes;
    r["remote_count"] = cores.remote_count;
    r["separated_pair_count"] = cores.separated_pairs.size();
    {
      std::vector<std::vector<double>> sep(k, std::vector<double>(k, 0.0));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sep[i][j] = cores.center_distances(i, j);
      r["separation"] = sep;
    }
    if (cfg.params.a > cfg.params.b) {
      BoundInputs inputs;
      inputs.params = cfg.params;
      inputs.epsilon = cfg.budget.epsilon;
      inputs.s = cfg.bounds_s;
      inputs.eta = cfg.bounds_eta;
      r["bounds"] = bounds_to_json(delta_bounds(inputs));
    }
    row.report = std::move(r);
  } catch (const std::exception& err) {
    row.ok = false;
    row.error = "stage " + stage + " failed for seed " + std::to_string(seed) + ": " +
                err.what();
    row.report = json{{"seed", seed}, {"error", row.error}};
  }

  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  row.report["volatile"] = json{{"runtime_ms", elapsed.count()}};
  return row;
}

RunRecord run_pipeline(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  RunRecord record;
  record.config_hash = cfg.hash();
  record.config = cfg;
  record.rows.resize(cfg.seeds.size());

  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(cfg.seeds.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i)
      record.rows[i] = run_single_seed(cfg, cfg.seeds[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&]() {
        for (std::size_t i = next.fetch_add(1); i < cfg.seeds.size(); i = next.fetch_add(1))
          record.rows[i] = run_single_seed(cfg, cfg.seeds[i]);
      });
    for (auto& t : pool) t.join();
  }
  return record;
}

json RunRecord::aggregate() const {
  std::vector<double> deltas;
  int failures = 0;
  for (const auto& row : rows) {
    if (row.ok)
      deltas.push_back(row.delta_final);
    else
      ++failures;
  }
  json agg;
  agg["rows"] = rows.size();
  agg["failure_count"] = failures;
  if (!deltas.empty()) {
    std::sort(deltas.begin(), deltas.end());
    const double mean =
        std::accumulate(deltas.begin(), deltas.end(), 0.0) / static_cast<double>(deltas.size());
    const std::size_t mid = deltas.size() / 2;
    const double median =
        deltas.size() % 2 ? deltas[mid] : 0.5 * (deltas[mid - 1] + deltas[mid]);
    agg["mean_delta"] = mean;
    agg["median_delta"] = median;
    agg["min_delta"] = deltas.front();
    agg["max_delta"] = deltas.back();
  }
  return agg;
}

json RunRecord::to_json() const {
  json j;
  j["config_hash"] = config_hash;
  j["config"] = config.to_json();
  json row_array = json::array();
  std::int64_t total_ms = 0;
  for (const auto& row : rows) {
    json r = row.report;
    if (r.contains("volatile")) {
      total_ms += r["volatile"].value("runtime_ms", std::int64_t{0});
      r.erase("volatile");
    }
    row_array.push_back(std::move(r));
  }
  j["rows"] = std::move(row_array);
  j["aggregate"] = aggregate();
  j["volatile"] = json{{"total_runtime_ms", total_ms}};
  return j;
}

std::vector<ExperimentConfig> SweepGrid::expand(const ExperimentConfig& base) const {
  auto axis_or = [](const auto& axis, auto fallback) {
    using T = decltype(fallback);
    if (axis.empty()) return std::vector<T>{fallback};
    return std::vector<T>(axis.begin(), axis.end());
  };
  const auto ns = axis_or(n, base.params.n);
  const auto ks = axis_or(k, base.params.k);
  const auto as = axis_or(a, base.params.a);
  const auto bs = axis_or(b, base.params.b);
  const auto epss = axis_or(epsilon, base.budget.epsilon);
  const auto strategies = axis_or(strategy, strategy_name(base.strategy));

  std::vector<ExperimentConfig> out;
  for (int nv : ns)
    for (int kv : ks)
      for (double av : as)
        for (double bv : bs)
          for (double ev : epss)
            for (const auto& sv : strategies) {
              ExperimentConfig cfg = base;
              cfg.params = SbmParams{nv, kv, av, bv};
              cfg.budget.epsilon = ev;
              cfg.budget.epsilon1 = ev;
              cfg.budget.epsilon2 = 0.0;
              if (ev > 0.0 && cfg.adversary == AdversaryType::kNone)
                cfg.adversary = AdversaryType::kOutlier;
              cfg.strategy = parse_strategy(sv);
              out.push_back(std::move(cfg));
            }
  return out;
}

SweepGrid SweepGrid::from_json(const json& j) {
  SweepGrid grid;
  if (j.contains("n")) grid.n = j["n"].get<std::vector<int>>();
  if (j.contains("k")) grid.k = j["k"].get<std::vector<int>>();
  if (j.contains("a")) grid.a = j["a"].get<std::vector<double>>();
  if (j.contains("b")) grid.b = j["b"].get<std::vector<double>>();
  if (j.contains("epsilon")) grid.epsilon = j["epsilon"].get<std::vector<double>>();
  if (j.contains("strategy")) grid.strategy = j["strategy"].get<std::vector<std::string>>();
  return grid;
}

std::string csv_header() {
  return "config_hash,n,k,a,b,model,adversary,strategy,epsilon,monotone_add,"
         "monotone_remove,boost,seed,status,delta_weak,delta_strong,delta_final,"
         "objective,plant_cut,alpha,beta,sdp_converged";
}

std::string csv_row(const std::string& hash, const ExperimentConfig& cfg,
                    const RecoveryReport& row) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << hash << ',' << cfg.params.n << ',' << cfg.params.k << ',' << cfg.params.a << ','
      << cfg.params.b << ',' << (cfg.model == GraphModel::kBernoulli ? "bernoulli" : "poisson")
      << ',' << adversary_name(cfg.adversary) << ',' << strategy_name(cfg.strategy) << ','
      << cfg.budget.epsilon << ',' << cfg.budget.monotone_add << ','
      << cfg.budget.monotone_remove << ',' << (cfg.boost_enabled ? 1 : 0) << ',' << row.seed
      << ',';
  if (!row.ok) {
    out << "error,,,,,,,,";
    return out.str();
  }
  out << "ok," << row.delta_weak << ',' << row.delta_strong << ',' << row.delta_final << ','
      << row.report.value("objective", 0.0) << ',' << row.report.value("plant_cut", 0) << ','
      << row.report.value("alpha", 0.0) << ',' << row.report.value("beta", 0.0) << ','
      << (row.report.value("sdp_converged", false) ? 1 : 0);
  return out.str();
}

namespace {

void atomic_write(const std::filesystem::path& path, const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << contents;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

SweepResult sweep(const ExperimentConfig& base, const SweepGrid& grid,
                  const std::string& out_dir, int threads) {
  namespace fs = std::filesystem;
  const fs::path rows_dir = fs::path(out_dir) / "rows";
  fs::create_directories(rows_dir);

  SweepResult result;
  const auto configs = grid.expand(base);

  struct Task {
    const ExperimentConfig* cfg;
    std::string hash;
    std::uint64_t seed;
    fs::path path;
  };
  std::vector<Task> tasks;
  for (const auto& cfg : configs) {
    const std::string hash = cfg.hash();
    for (std::uint64_t seed : cfg.seeds) {
      fs::path path = rows_dir / (hash + "_" + std::to_string(seed) + ".json");
      if (fs::exists(path)) {
        ++result.skipped;
        continue;
      }
      tasks.push_back(Task{&cfg, hash, seed, std::move(path)});
    }
  }

  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
  std::atomic<std::size_t> next{0};
  std::atomic<int> failed{0};
  auto work = [&]() {
    for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
      const Task& task = tasks[i];
      RecoveryReport row = run_single_seed(*task.cfg, task.seed);
      if (!row.ok) failed.fetch_add(1);
      atomic_write(task.path, row.report.dump(2) + "\n");
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  result.executed = static_cast<int>(tasks.size());
  result.failed = failed.load();

  // Rebuild records (and the CSV) from the on-disk rows so resumed sweeps
  // aggregate identically to fresh ones.
  std::ostringstream csv;
  csv << csv_header() << '\n';
  for (const auto& cfg : configs) {
    RunRecord record;
    record.config_hash = cfg.hash();
    record.config = cfg;
    for (std::uint64_t seed : cfg.seeds) {
      const fs::path path = rows_dir / (record.config_hash + "_" + std::to_string(seed) + ".json");
      RecoveryReport row;
      row.seed = seed;
      if (fs::exists(path)) {
        std::ifstream in(path);
        row.report = nlohmann::json::parse(in);
        row.ok = !row.report.contains("error");
        if (row.ok) {
          row.delta_weak = row.report.value("delta_weak", 1.0);
          row.delta_strong = row.report.value("delta_strong", 1.0);
          row.delta_final = row.report.value("delta_final", 1.0);
        } else {
          row.error = row.report["error"].get<std::string>();
        }
      } else {
        row.ok = false;
        row.error = "row missing";
      }
      csv << csv_row(record.config_hash, cfg, row) << '\n';
      record.rows.push_back(std::move(row));
    }
    result.records.push_back(std::move(record));
  }
  atomic_write(fs::path(out_dir) / "sweep.csv", csv.str());
  return result;
}

}  // namespace sbmr
