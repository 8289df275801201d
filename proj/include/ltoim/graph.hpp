#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ltoim/errors.hpp"
#include "ltoim/rng.hpp"

namespace ltoim {

struct Edge {
  int source = 0;
  int target = 0;
};

// Directed graph over dense node ids 0..n-1.
//
// Edge ids are canonical: edges are stored sorted by (target, source), so
// the in-edges of a node occupy a contiguous id range and a per-node weight
// block is a segment of the global edge vector. In-neighbor lists are sorted
// by source id; that order fixes the coordinate system of every per-node
// vector in the library (weights, observation indicators, ellipsoids).
class Graph {
 public:
  Graph() = default;

  // Validates and canonicalizes. Throws SelfLoop, DuplicateEdge, or
  // ValidationError (node id out of range).
  static Graph from_edges(int node_count, std::vector<Edge> edges);

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }

  int in_degree(int v) const { return in_offset_[v + 1] - in_offset_[v]; }
  // First in-edge id of v; the in-edges of v are ids
  // [in_offset(v), in_offset(v) + in_degree(v)).
  int in_offset(int v) const { return in_offset_[v]; }
  // Sorted source ids; position i corresponds to edge id in_offset(v) + i.
  std::span<const int> in_neighbors(int v) const {
    return {in_sources_.data() + in_offset_[v],
            static_cast<std::size_t>(in_degree(v))};
  }
  // Position of u in in_neighbors(v), or -1.
  int in_position(int v, int u) const;

  int out_degree(int u) const { return out_offset_[u + 1] - out_offset_[u]; }
  // (target, edge id) pairs, sorted by target.
  std::span<const std::pair<int, int>> out_edges(int u) const {
    return {out_edges_.data() + out_offset_[u],
            static_cast<std::size_t>(out_degree(u))};
  }

  int max_in_degree() const;
  bool is_acyclic() const;
  // Kahn layers: layer 0 holds all zero-in-degree nodes, each later layer the
  // nodes whose remaining in-edges were exhausted by the previous ones.
  // Throws NotADag on cyclic inputs.
  std::vector<std::vector<int>> topological_layers() const;

 private:
  int node_count_ = 0;
  std::vector<Edge> edges_;                      // canonical (target, source)
  std::vector<int> in_offset_;                   // size n+1
  std::vector<int> in_sources_;                  // in_sources_[e] = edges_[e].source
  std::vector<std::pair<int, int>> out_edges_;   // grouped by source
  std::vector<int> out_offset_;                  // size n+1
};

// Per-edge weights in canonical edge order. Valid iff every weight lies in
// [0,1] and the in-weights of every node sum to at most 1 (small float slack
// allowed). Immutable once constructed.
class WeightVector {
 public:
  WeightVector() = default;

  // Throws WeightOutOfRange or WeightSumExceedsOne.
  static WeightVector validated(const Graph& g, Eigen::VectorXd w);
  static WeightVector constant(const Graph& g, double w);
  static WeightVector zero(const Graph& g);

  double operator[](int e) const { return w_[e]; }
  const Eigen::VectorXd& values() const { return w_; }
  int size() const { return static_cast<int>(w_.size()); }

 private:
  explicit WeightVector(Eigen::VectorXd w) : w_(std::move(w)) {}
  Eigen::VectorXd w_;
};

// In-weights of node v, in in-neighbor order (a view into w).
inline Eigen::Ref<const Eigen::VectorXd> in_weights(const Graph& g,
                                                    const WeightVector& w,
                                                    int v) {
  return w.values().segment(g.in_offset(v), g.in_degree(v));
}

struct WeightedEdge {
  int source = 0;
  int target = 0;
  double weight = 0.0;
};

// Builds graph and weights together from an explicit edge list.
std::pair<Graph, WeightVector> build_graph(int node_count,
                                           std::span<const WeightedEdge> edges);

enum class GraphFamily {
  Bar,        // disjoint directed edges 2i -> 2i+1
  Chain,      // 0 -> 1 -> ... -> n-1
  Star,       // hub 0 with n-1 spokes
  Ray,        // hub 0 with `arms` chains of length `arm_length`
  Tree,       // complete `branching`-ary tree, BFS numbering, root 0
  Grid,       // rows x cols lattice, always encoded as mutual edge pairs
  Complete,   // all ordered pairs
  Bipartite,  // left block 0..left-1 to right block left..left+right-1
  Dag,        // random edges u -> v for u < v
  ErdosRenyi  // random directed graph
};

enum class WeightRule {
  Constant,
  // Per-edge U(0,1) draws; any node whose in-weights sum above 1 has its
  // block scaled by 1/(sum + 1e-9).
  UniformScaled
};

// Orientation of the structured families (bar/chain/star/ray/tree/bipartite).
// Forward follows the family description above, Reverse flips every edge,
// Both emits each edge in both directions (the edge-pair encoding of an
// undirected graph). Grid and Complete are mutual by construction.
enum class EdgeDirection { Forward, Reverse, Both };

struct GraphFamilyParams {
  GraphFamily family = GraphFamily::Chain;
  int nodes = 0;               // chain, star, tree, complete, dag, erdos_renyi
  int pairs = 0;               // bar
  int arms = 0;                // ray
  int arm_length = 0;          // ray
  int rows = 0, cols = 0;      // grid
  int left = 0, right = 0;     // bipartite
  int branching = 2;           // tree
  double edge_probability = 0.5;  // dag, erdos_renyi, bipartite
  EdgeDirection direction = EdgeDirection::Forward;
  WeightRule weight_rule = WeightRule::Constant;
  double weight = 0.1;         // constant rule
  std::uint64_t seed = 0;      // random families and UniformScaled draws
};

// Deterministic for a fixed parameter set. Throws UnsupportedFamilySize on
// infeasible sizes, plus the build_graph validation errors (e.g. a constant
// weight too large for a node's in-degree).
std::pair<Graph, WeightVector> generate(const GraphFamilyParams& params);

// Sorted, deduplicated copy of seeds; throws ValidationError when empty or
// out of range.
std::vector<int> normalized_seed_set(const Graph& g, std::span<const int> seeds);

// Nodes lying on some source->sink walk from the seed set to v: the
// intersection of "reachable from seeds" with "reaches v" (both inclusive).
// Exact on DAGs; a superset of the on-a-simple-path set in cyclic graphs.
// Empty when v is unreachable from the seeds.
std::vector<int> relevance_set(const Graph& g, std::span<const int> seeds,
                               int v);

// counts[u] = |{v not in seeds : u in relevance_set(seeds, v)}|.
Eigen::VectorXi relevance_counts(const Graph& g, std::span<const int> seeds);

enum class GammaMode { Exact, Bound };

inline constexpr std::int64_t kDefaultSeedSetCap = 100000;

// Topology diagnostic gamma(G, K): the worst-case Euclidean norm of the
// relevance-count vector over seed sets of size exactly K (spread is
// monotone in the seed set, so the full budget is the binding case).
// Exact mode enumerates all C(n, K) sets and throws EnumerationTooLarge
// past the cap; Bound mode returns the closed form (n - K) * sqrt(n).
double gamma_diagnostic(const Graph& g, int K, GammaMode mode,
                        std::int64_t cap = kDefaultSeedSetCap);

}  // namespace ltoim
