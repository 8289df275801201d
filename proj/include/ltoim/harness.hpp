#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ltoim/etc_bandit.hpp"
#include "ltoim/graph.hpp"
#include "ltoim/linucb.hpp"

namespace ltoim {

enum class AlgorithmKind { LtLinUcb, OimEtc };
enum class OracleKind { Exact, GreedyExact, GreedyMc };
enum class EvalMode { Exact, Mc };

// Where the instance comes from: a graph document on disk (path resolved
// against the directory passed to run_experiment) or a generated family.
// Exactly one of the two is set.
struct GraphSpec {
  std::optional<std::string> file;
  std::optional<GraphFamilyParams> family;
};

struct ExperimentConfig {
  GraphSpec graph;
  AlgorithmKind algorithm = AlgorithmKind::LtLinUcb;
  int seed_count = 1;
  long rounds = 0;
  int replications = 1;
  std::uint64_t master_seed = 0;

  // Baseline seed selector. It fixes the benchmark scale eta * value and,
  // for the confidence-set oracles that need an inner maximizer, the inner
  // maximizer itself.
  OracleKind oracle = OracleKind::Exact;
  long oracle_sims = 1000;  // simulations per objective call, greedy_mc only

  // lt_linucb knobs.
  PairOracleKind pair_oracle = PairOracleKind::Auto;
  std::optional<double> delta;  // default 1 / (n sqrt(T))
  RadiusMode radius_mode = RadiusMode::PerNode;
  double epsilon = 0.05;
  BoxMode box_mode = BoxMode::EllipsoidOnly;

  // oim_etc knobs.
  BudgetMode budget_mode = BudgetMode::Independent;
  long manual_k = 0;
  std::optional<double> delta_min;
  DiffusionModel model = DiffusionModel::LinearThreshold;

  // Per-round reward measurement for the regret column.
  EvalMode evaluation = EvalMode::Exact;
  long eval_sims = 10000;

  bool timing = false;  // ms_elapsed stays 0 when false
  std::optional<std::string> output_csv;
  std::optional<std::string> output_summary;
};

// Parses an experiment document (format_version 1). Unknown enum spellings,
// missing required fields, and out-of-range counts raise ConfigError.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct ExperimentResult {
  std::vector<std::vector<RegretRecord>> replications;
  double eta = 1.0;  // approximation factor of the baseline oracle
  double opt = 0.0;  // baseline oracle value under the true weights
  double eta_opt = 0.0;
  double delta = 0.0;  // resolved confidence level (lt_linucb only)
  nlohmann::json summary;
};

// Renders the regret records as CSV:
//   replication,round,seed_set,spread,eta_opt,cum_regret,ms_elapsed
// with seed ids ';'-joined and doubles in %.12g. The text is a pure
// function of the records, so a rerun of the same config matches byte
// for byte.
std::string records_to_csv(const std::vector<std::vector<RegretRecord>>& reps);

// Runs the configured experiment: one bandit run per replication, each on
// stream master.child(replication index). Writes the CSV and the summary
// document when the config names output paths (resolved against base_dir).
// Progress and wall-clock chatter go to stderr only.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::filesystem::path& base_dir = ".");

}  // namespace ltoim
