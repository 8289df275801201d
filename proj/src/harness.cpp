#include "ltoim/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <utility>

#include "ltoim/json_io.hpp"
#include "ltoim/spread.hpp"
#include "ltoim/wcim.hpp"

namespace ltoim {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("experiment config: missing field '") + key +
                      "'");
  }
  return j.at(key);
}

void check_version(const json& j) {
  const json& v = require(j, "format_version");
  if (!v.is_number_integer() || v.get<int>() != kFormatVersion) {
    throw ConfigError("experiment config: unsupported format_version");
  }
}

[[noreturn]] void bad_enum(const char* field, const std::string& got) {
  throw ConfigError(std::string("experiment config: unknown ") + field + " '" +
                    got + "'");
}

std::string get_string(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) {
    throw ConfigError(std::string("experiment config: '") + key +
                      "' must be a string");
  }
  return v.get<std::string>();
}

AlgorithmKind parse_algorithm(const std::string& s) {
  if (s == "lt_linucb") return AlgorithmKind::LtLinUcb;
  if (s == "oim_etc") return AlgorithmKind::OimEtc;
  bad_enum("algorithm", s);
}

OracleKind parse_oracle(const std::string& s) {
  if (s == "exact") return OracleKind::Exact;
  if (s == "greedy_exact") return OracleKind::GreedyExact;
  if (s == "greedy_mc") return OracleKind::GreedyMc;
  bad_enum("oracle", s);
}

PairOracleKind parse_pair_oracle(const std::string& s) {
  if (s == "auto") return PairOracleKind::Auto;
  if (s == "edge_ucb") return PairOracleKind::EdgeUcb;
  if (s == "dag_greedy") return PairOracleKind::DagGreedy;
  if (s == "epsilon_net") return PairOracleKind::EpsilonNet;
  bad_enum("pair_oracle", s);
}

RadiusMode parse_radius_mode(const std::string& s) {
  if (s == "per_node") return RadiusMode::PerNode;
  if (s == "theorem") return RadiusMode::Theorem;
  bad_enum("radius_mode", s);
}

BoxMode parse_box_mode(const std::string& s) {
  if (s == "ellipsoid") return BoxMode::EllipsoidOnly;
  if (s == "box") return BoxMode::BoxClipped;
  bad_enum("box_mode", s);
}

BudgetMode parse_budget_mode(const std::string& s) {
  if (s == "dependent") return BudgetMode::Dependent;
  if (s == "independent") return BudgetMode::Independent;
  if (s == "manual") return BudgetMode::Manual;
  bad_enum("budget mode", s);
}

DiffusionModel parse_model(const std::string& s) {
  if (s == "lt") return DiffusionModel::LinearThreshold;
  if (s == "ic") return DiffusionModel::IndependentCascade;
  bad_enum("model", s);
}

EvalMode parse_eval_mode(const std::string& s) {
  if (s == "exact") return EvalMode::Exact;
  if (s == "mc") return EvalMode::Mc;
  bad_enum("evaluation mode", s);
}

GraphFamily parse_family(const std::string& s) {
  if (s == "bar") return GraphFamily::Bar;
  if (s == "chain") return GraphFamily::Chain;
  if (s == "star") return GraphFamily::Star;
  if (s == "ray") return GraphFamily::Ray;
  if (s == "tree") return GraphFamily::Tree;
  if (s == "grid") return GraphFamily::Grid;
  if (s == "complete") return GraphFamily::Complete;
  if (s == "bipartite") return GraphFamily::Bipartite;
  if (s == "dag") return GraphFamily::Dag;
  if (s == "erdos_renyi") return GraphFamily::ErdosRenyi;
  bad_enum("graph family", s);
}

EdgeDirection parse_direction(const std::string& s) {
  if (s == "forward") return EdgeDirection::Forward;
  if (s == "reverse") return EdgeDirection::Reverse;
  if (s == "both") return EdgeDirection::Both;
  bad_enum("direction", s);
}

WeightRule parse_weight_rule(const std::string& s) {
  if (s == "constant") return WeightRule::Constant;
  if (s == "uniform_scaled") return WeightRule::UniformScaled;
  bad_enum("weight_rule", s);
}

GraphSpec parse_graph_spec(const json& j) {
  if (!j.is_object()) {
    throw ConfigError("experiment config: 'graph' must be an object");
  }
  const bool has_file = j.contains("file");
  const bool has_family = j.contains("family");
  if (has_file == has_family) {
    throw ConfigError(
        "experiment config: 'graph' needs exactly one of 'file' or 'family'");
  }
  GraphSpec spec;
  if (has_file) {
    spec.file = get_string(j, "file");
    return spec;
  }
  GraphFamilyParams p;
  p.family = parse_family(get_string(j, "family"));
  p.nodes = j.value("nodes", p.nodes);
  p.pairs = j.value("pairs", p.pairs);
  p.arms = j.value("arms", p.arms);
  p.arm_length = j.value("arm_length", p.arm_length);
  p.rows = j.value("rows", p.rows);
  p.cols = j.value("cols", p.cols);
  p.left = j.value("left", p.left);
  p.right = j.value("right", p.right);
  p.branching = j.value("branching", p.branching);
  p.edge_probability = j.value("edge_probability", p.edge_probability);
  if (j.contains("direction")) {
    p.direction = parse_direction(get_string(j, "direction"));
  }
  if (j.contains("weight_rule")) {
    p.weight_rule = parse_weight_rule(get_string(j, "weight_rule"));
  }
  p.weight = j.value("weight", p.weight);
  p.seed = j.value("seed", p.seed);
  spec.family = p;
  return spec;
}

ImOracle make_im_oracle(const Graph& g, OracleKind kind, long sims,
                        RngStream mc_base) {
  switch (kind) {
    case OracleKind::Exact:
      return [&g](const WeightVector& w, int K) { return exact_opt(g, w, K); };
    case OracleKind::GreedyExact:
      return [&g](const WeightVector& w, int K) {
        return greedy_im(g, K, make_exact_evaluator(g, w));
      };
    case OracleKind::GreedyMc:
    default:
      return [&g, sims, mc_base](const WeightVector& w, int K) {
        return greedy_im(
            g, K, make_mc_evaluator(g, w, static_cast<int>(sims), mc_base));
      };
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Auxiliary streams live far above any plausible replication index, so they
// never collide with master.child(replication).
constexpr std::uint64_t kOracleMcKey = (1ull << 32) + 1;
constexpr std::uint64_t kEvalMcKey = (1ull << 32) + 2;

}  // namespace

ExperimentConfig experiment_config_from_json(const json& j) {
  check_version(j);
  ExperimentConfig cfg;
  try {
    cfg.graph = parse_graph_spec(require(j, "graph"));
    cfg.algorithm = parse_algorithm(get_string(j, "algorithm"));
    cfg.rounds = require(j, "rounds").get<long>();
    cfg.seed_count = j.value("seed_count", cfg.seed_count);
    cfg.replications = j.value("replications", cfg.replications);
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    if (j.contains("oracle")) cfg.oracle = parse_oracle(get_string(j, "oracle"));
    cfg.oracle_sims = j.value("oracle_sims", cfg.oracle_sims);
    if (j.contains("pair_oracle")) {
      cfg.pair_oracle = parse_pair_oracle(get_string(j, "pair_oracle"));
    }
    if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
    if (j.contains("radius_mode")) {
      cfg.radius_mode = parse_radius_mode(get_string(j, "radius_mode"));
    }
    cfg.epsilon = j.value("epsilon", cfg.epsilon);
    if (j.contains("box_mode")) {
      cfg.box_mode = parse_box_mode(get_string(j, "box_mode"));
    }
    if (j.contains("budget")) {
      const json& b = j.at("budget");
      cfg.budget_mode = parse_budget_mode(get_string(b, "mode"));
      cfg.manual_k = b.value("k", cfg.manual_k);
      if (b.contains("delta_min")) {
        cfg.delta_min = b.at("delta_min").get<double>();
      }
    }
    if (j.contains("model")) cfg.model = parse_model(get_string(j, "model"));
    if (j.contains("evaluation")) {
      const json& e = j.at("evaluation");
      cfg.evaluation = parse_eval_mode(get_string(e, "mode"));
      cfg.eval_sims = e.value("sims", cfg.eval_sims);
    }
    cfg.timing = j.value("timing", cfg.timing);
    if (j.contains("output_csv")) cfg.output_csv = get_string(j, "output_csv");
    if (j.contains("output_summary")) {
      cfg.output_summary = get_string(j, "output_summary");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }

  if (cfg.rounds < 1) {
    throw ConfigError("experiment config: 'rounds' must be at least 1");
  }
  if (cfg.seed_count < 1) {
    throw ConfigError("experiment config: 'seed_count' must be at least 1");
  }
  if (cfg.replications < 1) {
    throw ConfigError("experiment config: 'replications' must be at least 1");
  }
  if (cfg.delta && (!(*cfg.delta > 0.0) || *cfg.delta > 1.0)) {
    throw ConfigError("experiment config: 'delta' must lie in (0, 1]");
  }
  if (!(cfg.epsilon > 0.0)) {
    throw ConfigError("experiment config: 'epsilon' must be positive");
  }
  if (cfg.eval_sims < 1 || cfg.oracle_sims < 1) {
    throw ConfigError("experiment config: simulation counts must be positive");
  }
  if (cfg.budget_mode == BudgetMode::Manual && cfg.manual_k < 1) {
    throw ConfigError(
        "experiment config: manual budget needs 'k' of at least 1");
  }
  if (cfg.delta_min && !(*cfg.delta_min > 0.0)) {
    throw ConfigError("experiment config: 'delta_min' must be positive");
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return experiment_config_from_json(load_json_file(path));
}

std::string records_to_csv(
    const std::vector<std::vector<RegretRecord>>& reps) {
  std::string out = "replication,round,seed_set,spread,eta_opt,cum_regret,ms_elapsed\n";
  for (std::size_t r = 0; r < reps.size(); ++r) {
    for (const RegretRecord& rec : reps[r]) {
      out += std::to_string(r);
      out += ',';
      out += std::to_string(rec.round);
      out += ',';
      for (std::size_t i = 0; i < rec.seeds.size(); ++i) {
        if (i > 0) out += ';';
        out += std::to_string(rec.seeds[i]);
      }
      out += ',';
      out += format_double(rec.spread);
      out += ',';
      out += format_double(rec.eta_opt);
      out += ',';
      out += format_double(rec.cum_regret);
      out += ',';
      out += std::to_string(rec.ms_elapsed);
      out += '\n';
    }
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::filesystem::path& base_dir) {
  const auto t0 = std::chrono::steady_clock::now();

  auto instance = [&]() -> std::pair<Graph, WeightVector> {
    if (cfg.graph.file) return load_graph(base_dir / *cfg.graph.file);
    if (cfg.graph.family) return generate(*cfg.graph.family);
    throw ConfigError("experiment config: no graph source");
  }();
  const Graph& g = instance.first;
  const WeightVector& w_true = instance.second;
  const int n = g.node_count();
  const long T = cfg.rounds;

  RngStream master(cfg.master_seed);
  const ImOracle im_oracle =
      make_im_oracle(g, cfg.oracle, cfg.oracle_sims, master.child(kOracleMcKey));
  const double eta =
      cfg.oracle == OracleKind::Exact ? 1.0 : 1.0 - std::exp(-1.0);
  const OracleResult baseline = im_oracle(w_true, cfg.seed_count);
  const double eta_opt = eta * baseline.value;

  const SpreadEvaluator benchmark_eval =
      cfg.evaluation == EvalMode::Exact
          ? make_exact_evaluator(g, w_true)
          : make_mc_evaluator(g, w_true, static_cast<int>(cfg.eval_sims),
                              master.child(kEvalMcKey));

  ExperimentResult result;
  result.eta = eta;
  result.opt = baseline.value;
  result.eta_opt = eta_opt;
  result.replications.reserve(static_cast<std::size_t>(cfg.replications));

  if (cfg.algorithm == AlgorithmKind::LtLinUcb) {
    const double delta =
        cfg.delta ? *cfg.delta : 1.0 / (n * std::sqrt(static_cast<double>(T)));
    result.delta = delta;
    LinUcbConfig lc;
    lc.seed_count = cfg.seed_count;
    lc.delta = delta;
    lc.radius_mode = cfg.radius_mode;
    const PairOracle oracle = make_pair_oracle(
        cfg.pair_oracle, im_oracle, cfg.epsilon, kDefaultNetCap, cfg.box_mode);
    for (int r = 0; r < cfg.replications; ++r) {
      LinUcbRunResult run = lt_linucb_run(
          g, w_true, lc, T, oracle, benchmark_eval, eta_opt,
          master.child(static_cast<std::uint64_t>(r)), nullptr, cfg.timing);
      result.replications.push_back(std::move(run.records));
    }
  } else {
    EtcConfig ec;
    ec.seed_count = cfg.seed_count;
    ec.horizon = T;
    ec.model = cfg.model;
    ec.budget_mode = cfg.budget_mode;
    ec.manual_k = cfg.manual_k;
    ec.delta_min = cfg.delta_min;
    for (int r = 0; r < cfg.replications; ++r) {
      EtcRunResult run =
          run_etc(g, w_true, ec, im_oracle, benchmark_eval, eta_opt,
                  master.child(static_cast<std::uint64_t>(r)), cfg.timing);
      result.replications.push_back(std::move(run.records));
    }
  }

  std::vector<double> finals;
  finals.reserve(result.replications.size());
  for (const auto& records : result.replications) {
    finals.push_back(records.empty() ? 0.0 : records.back().cum_regret);
  }
  std::sort(finals.begin(), finals.end());
  const auto quantile = [&finals](double p) {
    const double pos = p * static_cast<double>(finals.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, finals.size() - 1);
    return finals[lo] + (pos - static_cast<double>(lo)) * (finals[hi] - finals[lo]);
  };
  double total = 0.0;
  for (double f : finals) total += f;

  json summary = {
      {"format_version", kFormatVersion},
      {"algorithm",
       cfg.algorithm == AlgorithmKind::LtLinUcb ? "lt_linucb" : "oim_etc"},
      {"replications", cfg.replications},
      {"rounds", T},
      {"eta", eta},
      {"opt", baseline.value},
      {"eta_opt", eta_opt},
      {"final_regret",
       {{"q0", quantile(0.0)},
        {"q25", quantile(0.25)},
        {"q50", quantile(0.5)},
        {"q75", quantile(0.75)},
        {"q100", quantile(1.0)}}},
      {"mean_per_round_regret",
       total / (static_cast<double>(cfg.replications) * static_cast<double>(T))},
  };
  if (cfg.algorithm == AlgorithmKind::LtLinUcb) summary["delta"] = result.delta;
  result.summary = summary;

  if (cfg.output_csv) {
    const std::filesystem::path p = base_dir / *cfg.output_csv;
    std::ofstream out(p, std::ios::binary);
    if (!out) {
      throw ConfigError("cannot write CSV to " + p.string());
    }
    out << records_to_csv(result.replications);
  }
  if (cfg.output_summary) {
    write_json_file(base_dir / *cfg.output_summary, summary);
  }

  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  std::fprintf(stderr, "experiment: %d replication(s) x %ld round(s), %lld ms\n",
               cfg.replications, T, static_cast<long long>(ms));
  return result;
}

}  // namespace ltoim
