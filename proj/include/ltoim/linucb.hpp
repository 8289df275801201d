#pragma once

#include <functional>
#include <vector>

#include "ltoim/diffusion.hpp"
#include "ltoim/spread.hpp"
#include "ltoim/wcim.hpp"

namespace ltoim {

enum class RadiusMode {
  PerNode,  // N = the node's in-degree
  Theorem   // N = the node count, the worst case the analysis assumes
};

struct LinUcbConfig {
  int seed_count = 1;
  double delta = 0.1;
  RadiusMode radius_mode = RadiusMode::PerNode;
  // >= 0 overrides the formula with a constant radius (0 pins the center:
  // useful for omniscient baselines).
  double fixed_radius = -1.0;
};

// sqrt(N log(1 + t N) + 2 log(1/delta)) + sqrt(N): the confidence radius
// after t update rounds for a node with N regression coordinates, valid
// simultaneously for all rounds with probability 1 - delta. Throws
// InvalidDelta outside (0,1], ValidationError on N < 1 or t < 0.
double confidence_radius(int N, long round, double delta);

// Per-node ridge regression state: gramian M (identity prior), moment b,
// estimate M^{-1} b, with the inverse maintained by rank-one updates.
class LinUcbState {
 public:
  LinUcbState(const Graph& g, LinUcbConfig cfg);

  const LinUcbConfig& config() const { return cfg_; }
  long round() const { return round_; }  // completed feedback rounds
  void advance() { ++round_; }

  // Radius for node v's ellipsoid at round t (the formula, or the
  // configured fixed override).
  double radius(int v, long t) const;
  // Ellipsoids (M, b, radius(v, t)) for every node with in-edges.
  ConfidenceSet confidence_set(long t) const;

  // Rank-one regression update with one observation of node v.
  void observe(int v, const ObservationPair& pair);

  const Eigen::MatrixXd& gramian(int v) const { return node(v).M; }
  const Eigen::VectorXd& moment(int v) const { return node(v).b; }
  const Eigen::VectorXd& estimate(int v) const { return node(v).what; }
  const Eigen::MatrixXd& inverse(int v) const { return node(v).Minv; }

  // Rewrites the moment so the estimate becomes w (b = M w); for seeding
  // omniscient baselines in tests.
  void set_estimate(int v, const Eigen::Ref<const Eigen::VectorXd>& w);

  // Whether w lies within radius(v, t) of the estimate in the gramian norm.
  bool covers(int v, const Eigen::Ref<const Eigen::VectorXd>& w, long t) const;

 private:
  struct NodeState {
    Eigen::MatrixXd M, Minv;
    Eigen::VectorXd b, what;
  };
  const NodeState& node(int v) const;
  NodeState& node(int v);

  const Graph* g_;
  LinUcbConfig cfg_;
  long round_ = 0;
  std::vector<NodeState> nodes_;  // indexed by node id; empty for in-degree 0
};

// Chooses the seed set for one round from the graph, the current confidence
// set, and the seed budget.
using PairOracle =
    std::function<PairResult(const Graph&, const ConfidenceSet&, int)>;

enum class PairOracleKind { Auto, EdgeUcb, DagGreedy, EpsilonNet };

// Auto resolves per graph: edge-wise bounds when every in-degree is at most
// 1, the greedy DAG recursion on acyclic graphs, the weight grid otherwise.
// im_oracle is consulted by the edge-ucb and grid paths.
PairOracle make_pair_oracle(PairOracleKind kind, ImOracle im_oracle,
                            double epsilon = 0.05,
                            std::int64_t net_cap = kDefaultNetCap,
                            BoxMode mode = BoxMode::EllipsoidOnly);

struct StepResult {
  PairResult choice;
  DiffusionTrace trace;
};

// One bandit round: build the confidence set at round t = completed + 1,
// ask the oracle for seeds, run the cascade (thresholds from
// round_stream.child(0)), distill node-level feedback into one observation
// per exposed node (round_stream.child(1)), fold them in, advance.
StepResult lt_linucb_step(LinUcbState& state, const Graph& g,
                          const WeightVector& w_true, const PairOracle& oracle,
                          RngStream round_stream);

struct RegretRecord {
  long round = 0;  // 1-based
  std::vector<int> seeds;
  double spread = 0.0;   // benchmark value of the chosen set under w_true
  double eta_opt = 0.0;  // scaled optimum the regret is measured against
  double cum_regret = 0.0;
  long ms_elapsed = 0;  // stays 0 unless timing is requested
};

struct LinUcbRunResult {
  std::vector<RegretRecord> records;
  long coverage_checks = 0;
  long coverage_violations = 0;
  bool any_violation = false;
};

// T rounds of the bandit; round t draws from run_stream.child(t). spread
// and regret come from benchmark_eval (an evaluator under the true
// weights); cum_regret accumulates eta_opt - spread. When coverage_truth
// is non-null, each round's post-update state is checked against the true
// weights at radius(v, t) and the counters filled in. timing stamps
// per-round wall-clock milliseconds (off by default: timestamps are the
// one non-deterministic output).
LinUcbRunResult lt_linucb_run(const Graph& g, const WeightVector& w_true,
                              const LinUcbConfig& cfg, long T,
                              const PairOracle& oracle,
                              const SpreadEvaluator& benchmark_eval,
                              double eta_opt, RngStream run_stream,
                              const WeightVector* coverage_truth = nullptr,
                              bool timing = false);

}  // namespace ltoim
