#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ltoim/ellipsoid.hpp"
#include "ltoim/spread.hpp"

namespace ltoim {

// A seed set together with the weights (global edge order) that realize its
// optimistic value.
struct PairResult {
  std::vector<int> seeds;
  Eigen::VectorXd weights;
  double value = 0.0;
};

// Influence maximization under fixed weights and a seed budget; the
// building block the weight-and-seed oracles below call per weight
// candidate.
using ImOracle = std::function<OracleResult(const WeightVector&, int)>;

// In-degree <= 1 graphs: the optimistic weight of each edge separates into
// its scalar upper confidence bound clamped to [0,1], so one im_oracle call
// on those weights solves the joint problem. Throws IndegreeTooLarge
// otherwise, ValidationError when a node with an in-edge lacks an ellipsoid.
PairResult pair_oracle_edge_ucb(const Graph& g, const ConfidenceSet& cs,
                                int K, const ImOracle& im_oracle);

struct DagValueResult {
  double total = 0.0;        // sum of per_node
  Eigen::VectorXd per_node;  // optimistic reach mass per node
  Eigen::VectorXd weights;   // realizing weights, global edge order
};

// Optimistic cascade value on a DAG for a fixed seed set: drop the seeds'
// in-edges, walk a topological order, give seeds mass 1 and in-edge-free
// non-seeds mass 0, and give every other node the ellipsoid maximum of its
// in-neighbors' masses weighted by its in-weights. Masses are not clamped:
// the box is part of the confidence set only through `mode`, and leaving
// values free keeps the result an upper bound for every weight the
// ellipsoids admit. Throws NotADag on cyclic inputs.
DagValueResult wcim_value_dag(const Graph& g, const ConfidenceSet& cs,
                              std::span<const int> seeds,
                              BoxMode mode = BoxMode::EllipsoidOnly);

// Bipartite specialization: every node must have only out-edges (or none)
// or only in-edges, and the seeds must sit on the out side; the value is
// the sum over in-side nodes of the optimistic seed mass, plus |seeds| when
// include_seed_count is set. weights_out, when given, receives the
// realizing weights. Throws NotBipartite when nodes mix roles or a seed
// sits on the in side.
double bipartite_value(const Graph& g, const ConfidenceSet& cs,
                       std::span<const int> seeds,
                       bool include_seed_count = false,
                       Eigen::VectorXd* weights_out = nullptr,
                       BoxMode mode = BoxMode::EllipsoidOnly);

// Seed-set objective returning (value, realizing weights).
using SetValueFn =
    std::function<std::pair<double, Eigen::VectorXd>(std::span<const int>)>;

// Greedy seed selection against an arbitrary set objective, ties to the
// lowest id; the returned weights come from a final evaluation of the
// selected set. Seeds are drawn from `candidates` (all nodes when empty,
// e.g. restrict to the out side for a bipartite objective), with
// min(K, |candidates|) additions.
PairResult greedy_pair_oracle(const Graph& g, int K, const SetValueFn& value,
                              std::span<const int> candidates = {});

// Greedy over the DAG optimistic value.
PairResult dag_greedy_pair_oracle(const Graph& g, const ConfidenceSet& cs,
                                  int K, BoxMode mode = BoxMode::EllipsoidOnly);

inline constexpr std::int64_t kDefaultNetCap = 1'000'000;

// Grid search over weight space: each in-weight coordinate is discretized
// at pitch eps / sqrt(m) across its ellipsoid extent intersected with
// [0,1], per-node candidates keep only grid points inside the ellipsoid
// (small relative slack) with in-weight sum at most 1, and im_oracle scores
// every cross-product candidate; the first best value wins. A node whose
// filter leaves nothing falls back to its clamped (and, if needed,
// rescaled) center. Throws NetTooLarge when the candidate count exceeds
// cap, ValidationError when eps is not positive.
PairResult epsilon_net_pair_oracle(const Graph& g, const ConfidenceSet& cs,
                                   int K, double eps,
                                   const ImOracle& im_oracle,
                                   std::int64_t cap = kDefaultNetCap);

// One failed diminishing-returns comparison: adding `candidate` to
// small_set gains less than adding it to the superset large_set.
struct SubmodularityViolation {
  std::vector<int> small_set;
  std::vector<int> large_set;
  int candidate = 0;
  double small_gain = 0.0;
  double large_gain = 0.0;
};

struct SubmodularityReport {
  long checked = 0;
  std::vector<SubmodularityViolation> violations;
};

// Exhaustive diminishing-returns check of a set function over
// {0..universe-1}: every triple (S strictly inside S', candidate outside
// S') with small_gain < large_gain - tolerance is reported. Universe is
// capped at 12 (EnumerationTooLarge beyond).
SubmodularityReport submodularity_probe(
    const std::function<double(std::span<const int>)>& f, int universe,
    double tolerance = 1e-9);

}  // namespace ltoim
