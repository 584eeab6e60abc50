#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sbmr/boosting.hpp"
#include "sbmr/metrics.hpp"
#include "sbmr/recovery.hpp"
#include "sbmr/sbm.hpp"
#include "sbmr/sdp.hpp"

namespace sbmr {

enum class AdversaryType { kNone, kMonotone, kOutlier, kBoth };
enum class GraphModel { kBernoulli, kPoisson };

/// One experiment: generation -> corruption -> solve -> recover ->
/// (optional boost) -> evaluation, for a list of seeds.
struct ExperimentConfig {
  SbmParams params;
  GraphModel model = GraphModel::kBernoulli;

  AdversaryType adversary = AdversaryType::kNone;
  AdversaryBudget budget;
  AdversaryStrategy strategy = AdversaryStrategy::kUniform;

  SolverConfig solver;
  double recovery_rho = 0.27;

  bool boost_enabled = false;
  BoostConfig boost;

  double bounds_s = 2.0;
  double bounds_eta = 0.0;

  std::vector<std::uint64_t> seeds;

  void validate() const;
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);

  /// FNV-1a 64 hash of the canonical config serialization (seeds excluded,
  /// so the hash identifies a sweep point).
  std::string hash() const;
};

/// Per-seed outcome; `report` is the flat key/value JSON document with
/// timing isolated under its "volatile" key.
struct RecoveryReport {
  std::uint64_t seed = 0;
  bool ok = true;
  std::string error;  // set when ok is false, with the failing stage named
  double delta_weak = 1.0;
  double delta_strong = 1.0;
  double delta_final = 1.0;
  nlohmann::json report;
};

struct RunRecord {
  std::string config_hash;
  ExperimentConfig config;
  std::vector<RecoveryReport> rows;

  nlohmann::json aggregate() const;
  nlohmann::json to_json() const;
};

/// Runs every seed of the config, optionally across worker threads.
/// Thread count never changes the produced reports.
RunRecord run_pipeline(const ExperimentConfig& cfg, int threads = 1);

/// Runs one seed (the unit of work of run_pipeline and sweep).
RecoveryReport run_single_seed(const ExperimentConfig& cfg, std::uint64_t seed);

/// Axes of a sweep grid; empty axes keep the base config's value.
struct SweepGrid {
  std::vector<int> n, k;
  std::vector<double> a, b, epsilon;
  std::vector<std::string> strategy;

  std::vector<ExperimentConfig> expand(const ExperimentConfig& base) const;
  static SweepGrid from_json(const nlohmann::json& j);
};

/// Cartesian-product sweep with a resumable on-disk row store:
/// out_dir/rows/<hash>_<seed>.json, skipped when already present, plus an
/// aggregate CSV at out_dir/sweep.csv regenerated from all rows.
struct SweepResult {
  int executed = 0;
  int skipped = 0;
  int failed = 0;
  std::vector<RunRecord> records;
};

SweepResult sweep(const ExperimentConfig& base, const SweepGrid& grid,
                  const std::string& out_dir, int threads = 1);

/// CSV header and row serialization shared by sweep and tests.
std::string csv_header();
std::string csv_row(const std::string& hash, const ExperimentConfig& cfg,
                    const RecoveryReport& row);

/// JSON builders for the report pieces.
nlohmann::json feasibility_to_json(const FeasibilityReport& f);
nlohmann::json bounds_to_json(const BoundReport& b);
nlohmann::json closeness_to_json(const Closeness& c);

}  // namespace sbmr
