// Command-line laboratory for online influence maximization under linear
// threshold diffusion. Subcommands map one-to-one onto library operations:
//   generate-graph  -> generate()            (graph_core)
//   run             -> run_experiment()      (harness)
//   gom-check       -> verify_gom()          (gom)
//   wcim-solve      -> make_pair_oracle()    (wcim)
// Exit codes: 0 success, 1 validation or usage error, 2 enumeration cap
// exceeded.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ltoim/errors.hpp"
#include "ltoim/gom.hpp"
#include "ltoim/harness.hpp"
#include "ltoim/json_io.hpp"
#include "ltoim/linucb.hpp"
#include "ltoim/wcim.hpp"

namespace {

using nlohmann::json;

struct GenerateArgs {
  ltoim::GraphFamilyParams params;
  std::string output;
};

struct RunArgs {
  std::string config;
  std::string base_dir;
};

struct GomArgs {
  std::string graph;
  std::string w;
  std::string wprime;
  std::vector<int> seeds;
  std::int64_t cap = ltoim::kDefaultEnumerationCap;
  bool update_bound = false;
  std::string output;
};

struct WcimArgs {
  std::string graph;
  std::string confidence_set;
  int seed_count = 1;
  ltoim::PairOracleKind method = ltoim::PairOracleKind::Auto;
  double epsilon = 0.05;
  ltoim::BoxMode box_mode = ltoim::BoxMode::EllipsoidOnly;
  std::int64_t cap = ltoim::kDefaultNetCap;
  bool greedy_oracle = false;
  std::string output;
};

void emit(const json& doc, const std::string& output) {
  const std::string text = doc.dump(2);
  std::printf("%s\n", text.c_str());
  if (!output.empty()) ltoim::write_json_file(output, doc);
}

int cmd_generate(const GenerateArgs& args) {
  auto [g, w] = ltoim::generate(args.params);
  ltoim::save_graph(args.output, g, w);
  std::printf("wrote %s: %d nodes, %d edges\n", args.output.c_str(),
              g.node_count(), g.edge_count());
  return 0;
}

int cmd_run(const RunArgs& args) {
  const ltoim::ExperimentConfig cfg = ltoim::load_experiment_config(args.config);
  std::filesystem::path base = args.base_dir.empty()
                                   ? std::filesystem::path(args.config).parent_path()
                                   : std::filesystem::path(args.base_dir);
  if (base.empty()) base = ".";
  const ltoim::ExperimentResult res = ltoim::run_experiment(cfg, base);
  std::printf("%s\n", res.summary.dump(2).c_str());
  return 0;
}

int cmd_gom_check(const GomArgs& args) {
  auto [g, stored] = ltoim::load_graph(args.graph);
  const ltoim::WeightVector w = ltoim::load_weights(g, args.w);
  const ltoim::WeightVector wprime = ltoim::load_weights(g, args.wprime);

  const ltoim::GomReport report =
      ltoim::verify_gom(g, w, wprime, args.seeds, args.cap);
  json doc = ltoim::to_json(report);
  doc["format_version"] = ltoim::kFormatVersion;
  if (args.update_bound) {
    doc["update_bound"] = ltoim::to_json(
        ltoim::verify_update_bound(g, w, wprime, args.seeds, args.cap));
  }
  emit(doc, args.output);
  return 0;
}

int cmd_wcim_solve(const WcimArgs& args) {
  auto [g, stored] = ltoim::load_graph(args.graph);
  const ltoim::ConfidenceSet cs = ltoim::load_confidence_set(g, args.confidence_set);

  ltoim::ImOracle im_oracle;
  if (args.greedy_oracle) {
    im_oracle = [&g](const ltoim::WeightVector& w, int K) {
      return ltoim::greedy_im(g, K, ltoim::make_exact_evaluator(g, w));
    };
  } else {
    im_oracle = [&g](const ltoim::WeightVector& w, int K) {
      return ltoim::exact_opt(g, w, K);
    };
  }
  const ltoim::PairOracle oracle = ltoim::make_pair_oracle(
      args.method, im_oracle, args.epsilon, args.cap, args.box_mode);
  const ltoim::PairResult result = oracle(g, cs, args.seed_count);

  json doc = ltoim::to_json(result);
  doc["format_version"] = ltoim::kFormatVersion;
  emit(doc, args.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ltoim: a laboratory for online influence maximization under the "
      "linear threshold model"};
  app.require_subcommand(1);

  const std::map<std::string, ltoim::GraphFamily> family_names{
      {"bar", ltoim::GraphFamily::Bar},
      {"chain", ltoim::GraphFamily::Chain},
      {"star", ltoim::GraphFamily::Star},
      {"ray", ltoim::GraphFamily::Ray},
      {"tree", ltoim::GraphFamily::Tree},
      {"grid", ltoim::GraphFamily::Grid},
      {"complete", ltoim::GraphFamily::Complete},
      {"bipartite", ltoim::GraphFamily::Bipartite},
      {"dag", ltoim::GraphFamily::Dag},
      {"erdos_renyi", ltoim::GraphFamily::ErdosRenyi}};
  const std::map<std::string, ltoim::EdgeDirection> direction_names{
      {"forward", ltoim::EdgeDirection::Forward},
      {"reverse", ltoim::EdgeDirection::Reverse},
      {"both", ltoim::EdgeDirection::Both}};
  const std::map<std::string, ltoim::WeightRule> weight_rule_names{
      {"constant", ltoim::WeightRule::Constant},
      {"uniform_scaled", ltoim::WeightRule::UniformScaled}};
  const std::map<std::string, ltoim::PairOracleKind> method_names{
      {"auto", ltoim::PairOracleKind::Auto},
      {"edge_ucb", ltoim::PairOracleKind::EdgeUcb},
      {"dag_greedy", ltoim::PairOracleKind::DagGreedy},
      {"epsilon_net", ltoim::PairOracleKind::EpsilonNet}};
  const std::map<std::string, ltoim::BoxMode> box_mode_names{
      {"ellipsoid", ltoim::BoxMode::EllipsoidOnly},
      {"box", ltoim::BoxMode::BoxClipped}};

  GenerateArgs gen_args;
  CLI::App* gen = app.add_subcommand(
      "generate-graph", "Generate a graph family instance as a graph JSON file");
  gen->add_option("--family", gen_args.params.family, "graph family")
      ->required()
      ->transform(CLI::CheckedTransformer(family_names, CLI::ignore_case));
  gen->add_option("--n,--nodes", gen_args.params.nodes,
                  "node count (chain, star, tree, complete, dag, erdos_renyi)");
  gen->add_option("--pairs", gen_args.params.pairs, "disjoint pair count (bar)");
  gen->add_option("--arms", gen_args.params.arms, "arm count (ray)");
  gen->add_option("--arm-length", gen_args.params.arm_length, "arm length (ray)");
  gen->add_option("--rows", gen_args.params.rows, "row count (grid)");
  gen->add_option("--cols", gen_args.params.cols, "column count (grid)");
  gen->add_option("--left", gen_args.params.left, "left block size (bipartite)");
  gen->add_option("--right", gen_args.params.right,
                  "right block size (bipartite)");
  gen->add_option("--branching", gen_args.params.branching,
                  "branching factor (tree)");
  gen->add_option("--edge-probability", gen_args.params.edge_probability,
                  "edge probability (dag, erdos_renyi, bipartite)");
  gen->add_option("--direction", gen_args.params.direction,
                  "edge orientation: forward, reverse, or both")
      ->transform(CLI::CheckedTransformer(direction_names, CLI::ignore_case));
  gen->add_option("--weight-rule", gen_args.params.weight_rule,
                  "constant or uniform_scaled edge weights")
      ->transform(CLI::CheckedTransformer(weight_rule_names, CLI::ignore_case));
  gen->add_option("--weight", gen_args.params.weight,
                  "edge weight under the constant rule");
  gen->add_option("--seed", gen_args.params.seed,
                  "seed for random families and weight draws");
  gen->add_option("-o,--output", gen_args.output, "graph JSON destination")
      ->required();

  RunArgs run_args;
  CLI::App* run = app.add_subcommand(
      "run", "Run a bandit experiment described by a config JSON file");
  run->add_option("--config", run_args.config, "experiment config JSON path")
      ->required();
  run->add_option("--base-dir", run_args.base_dir,
                  "directory graph and output paths resolve against "
                  "(default: the config file's directory)");

  GomArgs gom_args;
  CLI::App* gom = app.add_subcommand(
      "gom-check",
      "Verify the group observation modulated smoothness inequality between "
      "two weight assignments");
  gom->add_option("--graph", gom_args.graph, "graph JSON path")->required();
  gom->add_option("--w", gom_args.w, "baseline weights JSON path")->required();
  gom->add_option("--wprime", gom_args.wprime, "perturbed weights JSON path")
      ->required();
  gom->add_option("--seeds", gom_args.seeds, "seed node ids")
      ->required()
      ->delimiter(',');
  gom->add_option("--cap", gom_args.cap, "live-edge enumeration cap");
  gom->add_flag("--update-bound", gom_args.update_bound,
                "also report the per-node observation window bound");
  gom->add_option("-o,--output", gom_args.output,
                  "write the JSON report here as well as stdout");

  WcimArgs wcim_args;
  CLI::App* wcim = app.add_subcommand(
      "wcim-solve",
      "Jointly pick seeds and optimistic weights from a confidence set");
  wcim->add_option("--graph", wcim_args.graph, "graph JSON path")->required();
  wcim->add_option("--confidence-set", wcim_args.confidence_set,
                   "confidence set JSON path")
      ->required();
  wcim->add_option("-K,--seed-count", wcim_args.seed_count, "seed budget");
  wcim->add_option("--method", wcim_args.method,
                   "auto, edge_ucb, dag_greedy, or epsilon_net")
      ->transform(CLI::CheckedTransformer(method_names, CLI::ignore_case));
  wcim->add_option("--epsilon", wcim_args.epsilon,
                   "grid pitch scale for the epsilon_net method");
  wcim->add_option("--box-mode", wcim_args.box_mode,
                   "ellipsoid (bare confidence set) or box (clamp weights "
                   "into [0,1])")
      ->transform(CLI::CheckedTransformer(box_mode_names, CLI::ignore_case));
  wcim->add_option("--cap", wcim_args.cap, "candidate grid size cap");
  wcim->add_flag("--greedy-oracle", wcim_args.greedy_oracle,
                 "use lazy greedy instead of exhaustive search for the inner "
                 "seed selection");
  wcim->add_option("-o,--output", wcim_args.output,
                   "write the JSON result here as well as stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_args);
    if (run->parsed()) return cmd_run(run_args);
    if (gom->parsed()) return cmd_gom_check(gom_args);
    if (wcim->parsed()) return cmd_wcim_solve(wcim_args);
  } catch (const ltoim::CapExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ltoim::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
