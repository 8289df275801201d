#pragma once

#include <Eigen/Dense>

#include <map>
#include <span>
#include <vector>

#include "ltoim/graph.hpp"
#include "ltoim/rng.hpp"

namespace ltoim {

// theta[v] is node v's activation threshold.
using ThresholdVector = Eigen::VectorXd;

enum class DiffusionModel { LinearThreshold, IndependentCascade };

// Full record of one diffusion: who activated and when. Time 0 is the seed
// set; step tau produces the nodes first active at tau + 1.
struct DiffusionTrace {
  DiffusionModel model = DiffusionModel::LinearThreshold;
  // Operational horizon n - 1: a strictly growing active set fixes every
  // activation time at most n - 1, so the cap never truncates a cascade.
  int horizon = 0;
  std::vector<int> activation_time;        // -1 = never activated
  std::vector<std::vector<int>> frontiers;  // frontiers[0] = sorted seeds

  bool active_at(int v, int tau) const {
    return activation_time[v] >= 0 && activation_time[v] <= tau;
  }
  // Cumulative active set at time tau (sorted); tau past the last frontier
  // returns the final set.
  std::vector<int> set_at(int tau) const;
  std::vector<std::vector<int>> sets() const;  // set_at(0..last frontier)
  int final_count() const;
};

// n iid U[0,1) draws, one per node id.
ThresholdVector sample_thresholds(const Graph& g, RngStream& stream);

// Linear threshold cascade: an inactive v activates at tau + 1 exactly when
// the weights of its in-edges from nodes active at tau reach theta[v]
// (weak inequality, taken literally: an empty sum meets a zero threshold).
// Throws ValidationError on bad seeds, a theta of the wrong size, or
// theta entries outside [0,1].
DiffusionTrace diffuse_lt(const Graph& g, const WeightVector& w,
                          std::span<const int> seeds,
                          const ThresholdVector& theta);

// Independent cascade: each node, on activating, gets one chance per
// out-edge to activate its target with the edge's weight as probability.
DiffusionTrace diffuse_ic(const Graph& g, const WeightVector& w,
                          std::span<const int> seeds, RngStream& stream);

// Per-node observation window extracted from a trace.
//
// For a non-seed node v, tau1 is the first time an in-neighbor of v is
// active and tau2 its own activation time (horizon + 1 when the event never
// happens). edge_sets[k] lists the positions (into in_neighbors(v)) of the
// in-neighbors active at time tau1 + k, for tau1 + k up to
// min(tau2 - 1, horizon): the times at which v's threshold was actually
// tested. Seed nodes are active from the start; their thresholds are never
// tested, so they carry no observation window (tau1 = tau2 = horizon + 1).
struct NodeFeedback {
  struct NodeRecord {
    int tau1 = 0;
    int tau2 = 0;
    bool seed = false;
    bool activated = false;
    std::vector<std::vector<int>> edge_sets;
  };
  int horizon = 0;
  std::vector<NodeRecord> nodes;
};

NodeFeedback extract_feedback(const DiffusionTrace& trace, const Graph& g);

// One regression sample for a node: indicator over in-neighbor positions of
// the set tested at some time tau, and whether the test fired at tau + 1.
struct ObservationPair {
  Eigen::VectorXd indicator;
  double label = 0.0;
};

// The sample node v generates at observation time tau; tau must lie in the
// node's window.
ObservationPair observation_for(const NodeFeedback& fb, const Graph& g, int v,
                                int tau);

// One pair per observed node, at a time drawn uniformly from its window.
// Nodes are processed in ascending id order, one draw each, so the result
// is a pure function of (fb, stream state). Seeds and never-exposed nodes
// are absent from the map.
std::map<int, ObservationPair> distill_update(const NodeFeedback& fb,
                                              const Graph& g,
                                              RngStream& stream);

}  // namespace ltoim
