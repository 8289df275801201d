#include "ltoim/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "ltoim/detail/enumeration.hpp"

namespace ltoim {
namespace {

constexpr double kSumSlack = 1e-9;

// Fixed-capacity bitset over node ids.
struct NodeBits {
  explicit NodeBits(int n) : words((n + 63) / 64, 0) {}
  void add(int v) { words[v >> 6] |= 1ULL << (v & 63); }
  bool contains(int v) const { return (words[v >> 6] >> (v & 63)) & 1; }
  void merge(const NodeBits& o) {
    for (std::size_t i = 0; i < words.size(); ++i) words[i] |= o.words[i];
  }
  // |this \ minus|
  int count_minus(const NodeBits& minus) const {
    int c = 0;
    for (std::size_t i = 0; i < words.size(); ++i)
      c += std::popcount(words[i] & ~minus.words[i]);
    return c;
  }
  std::vector<std::uint64_t> words;
};

NodeBits forward_reach(const Graph& g, std::span<const int> starts) {
  NodeBits seen(g.node_count());
  std::vector<int> stack(starts.begin(), starts.end());
  for (int v : stack) seen.add(v);
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (auto [v, e] : g.out_edges(u)) {
      (void)e;
      if (!seen.contains(v)) {
        seen.add(v);
        stack.push_back(v);
      }
    }
  }
  return seen;
}

NodeBits backward_reach(const Graph& g, int v) {
  NodeBits seen(g.node_count());
  seen.add(v);
  std::vector<int> stack{v};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int u : g.in_neighbors(x)) {
      if (!seen.contains(u)) {
        seen.add(u);
        stack.push_back(u);
      }
    }
  }
  return seen;
}

}  // namespace

Graph Graph::from_edges(int node_count, std::vector<Edge> edges) {
  if (node_count <= 0) throw ValidationError("node count must be positive");
  for (const Edge& e : edges) {
    if (e.source < 0 || e.source >= node_count || e.target < 0 ||
        e.target >= node_count)
      throw ValidationError("edge endpoint out of range: " +
                            std::to_string(e.source) + "->" +
                            std::to_string(e.target));
    if (e.source == e.target)
      throw SelfLoop("self loop at node " + std::to_string(e.source));
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.target != b.target ? a.target < b.target : a.source < b.source;
  });
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i].source == edges[i - 1].source &&
        edges[i].target == edges[i - 1].target)
      throw DuplicateEdge("duplicate edge " + std::to_string(edges[i].source) +
                          "->" + std::to_string(edges[i].target));

  Graph g;
  g.node_count_ = node_count;
  g.edges_ = std::move(edges);
  const int m = static_cast<int>(g.edges_.size());

  g.in_offset_.assign(node_count + 1, 0);
  for (const Edge& e : g.edges_) ++g.in_offset_[e.target + 1];
  std::partial_sum(g.in_offset_.begin(), g.in_offset_.end(),
                   g.in_offset_.begin());
  g.in_sources_.resize(m);
  for (int e = 0; e < m; ++e) g.in_sources_[e] = g.edges_[e].source;

  g.out_offset_.assign(node_count + 1, 0);
  for (const Edge& e : g.edges_) ++g.out_offset_[e.source + 1];
  std::partial_sum(g.out_offset_.begin(), g.out_offset_.end(),
                   g.out_offset_.begin());
  g.out_edges_.resize(m);
  std::vector<int> cursor(g.out_offset_.begin(), g.out_offset_.end() - 1);
  for (int e = 0; e < m; ++e)
    g.out_edges_[cursor[g.edges_[e].source]++] = {g.edges_[e].target, e};
  for (int u = 0; u < node_count; ++u)
    std::sort(g.out_edges_.begin() + g.out_offset_[u],
              g.out_edges_.begin() + g.out_offset_[u + 1]);
  return g;
}

int Graph::in_position(int v, int u) const {
  auto nbrs = in_neighbors(v);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), u);
  if (it == nbrs.end() || *it != u) return -1;
  return static_cast<int>(it - nbrs.begin());
}

int Graph::max_in_degree() const {
  int d = 0;
  for (int v = 0; v < node_count_; ++v) d = std::max(d, in_degree(v));
  return d;
}

bool Graph::is_acyclic() const {
  std::vector<int> indeg(node_count_);
  for (int v = 0; v < node_count_; ++v) indeg[v] = in_degree(v);
  std::vector<int> stack;
  for (int v = 0; v < node_count_; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  int seen = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    ++seen;
    for (auto [v, e] : out_edges(u)) {
      (void)e;
      if (--indeg[v] == 0) stack.push_back(v);
    }
  }
  return seen == node_count_;
}

std::vector<std::vector<int>> Graph::topological_layers() const {
  std::vector<int> indeg(node_count_);
  for (int v = 0; v < node_count_; ++v) indeg[v] = in_degree(v);
  std::vector<int> layer;
  for (int v = 0; v < node_count_; ++v)
    if (indeg[v] == 0) layer.push_back(v);
  std::vector<std::vector<int>> layers;
  int seen = 0;
  while (!layer.empty()) {
    seen += static_cast<int>(layer.size());
    std::vector<int> next;
    for (int u : layer)
      for (auto [v, e] : out_edges(u)) {
        (void)e;
        if (--indeg[v] == 0) next.push_back(v);
      }
    std::sort(next.begin(), next.end());
    layers.push_back(std::move(layer));
    layer = std::move(next);
  }
  if (seen != node_count_) throw NotADag("graph contains a cycle");
  return layers;
}

WeightVector WeightVector::validated(const Graph& g, Eigen::VectorXd w) {
  if (w.size() != g.edge_count())
    throw ValidationError("weight vector size does not match edge count");
  for (int e = 0; e < w.size(); ++e)
    if (!(w[e] >= 0.0 && w[e] <= 1.0))
      throw WeightOutOfRange("edge weight " + std::to_string(w[e]) +
                             " outside [0,1]");
  for (int v = 0; v < g.node_count(); ++v) {
    if (g.in_degree(v) == 0) continue;
    double sum = w.segment(g.in_offset(v), g.in_degree(v)).sum();
    if (sum > 1.0 + kSumSlack) throw WeightSumExceedsOne(v, sum);
  }
  return WeightVector(std::move(w));
}

WeightVector WeightVector::constant(const Graph& g, double w) {
  return validated(g, Eigen::VectorXd::Constant(g.edge_count(), w));
}

WeightVector WeightVector::zero(const Graph& g) {
  return validated(g, Eigen::VectorXd::Zero(g.edge_count()));
}

std::pair<Graph, WeightVector> build_graph(
    int node_count, std::span<const WeightedEdge> edges) {
  std::vector<Edge> plain;
  plain.reserve(edges.size());
  for (const WeightedEdge& e : edges) plain.push_back({e.source, e.target});
  Graph g = Graph::from_edges(node_count, std::move(plain));
  // Re-locate each input weight under the canonical edge order.
  Eigen::VectorXd w = Eigen::VectorXd::Zero(g.edge_count());
  for (const WeightedEdge& e : edges) {
    int pos = g.in_position(e.target, e.source);
    w[g.in_offset(e.target) + pos] = e.weight;
  }
  WeightVector wv = WeightVector::validated(g, std::move(w));
  return {std::move(g), std::move(wv)};
}

std::vector<int> normalized_seed_set(const Graph& g,
                                     std::span<const int> seeds) {
  if (seeds.empty()) throw ValidationError("seed set is empty");
  std::vector<int> s(seeds.begin(), seeds.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.front() < 0 || s.back() >= g.node_count())
    throw ValidationError("seed node out of range");
  return s;
}

namespace {

void append_directed(std::vector<Edge>& edges, int u, int v,
                     EdgeDirection direction) {
  if (direction != EdgeDirection::Reverse) edges.push_back({u, v});
  if (direction != EdgeDirection::Forward) edges.push_back({v, u});
}

}  // namespace

std::pair<Graph, WeightVector> generate(const GraphFamilyParams& p) {
  std::vector<Edge> edges;
  int n = 0;
  RngStream structure = RngStream(p.seed).child(0);
  const double q = p.edge_probability;
  if ((p.family == GraphFamily::Dag || p.family == GraphFamily::ErdosRenyi ||
       p.family == GraphFamily::Bipartite) &&
      !(q >= 0.0 && q <= 1.0))
    throw ValidationError("edge probability outside [0,1]");

  switch (p.family) {
    case GraphFamily::Bar: {
      if (p.pairs < 1) throw UnsupportedFamilySize("bar needs pairs >= 1");
      n = 2 * p.pairs;
      for (int i = 0; i < p.pairs; ++i)
        append_directed(edges, 2 * i, 2 * i + 1, p.direction);
      break;
    }
    case GraphFamily::Chain: {
      if (p.nodes < 2) throw UnsupportedFamilySize("chain needs nodes >= 2");
      n = p.nodes;
      for (int i = 0; i + 1 < n; ++i)
        append_directed(edges, i, i + 1, p.direction);
      break;
    }
    case GraphFamily::Star: {
      if (p.nodes < 2) throw UnsupportedFamilySize("star needs nodes >= 2");
      n = p.nodes;
      for (int i = 1; i < n; ++i) append_directed(edges, 0, i, p.direction);
      break;
    }
    case GraphFamily::Ray: {
      if (p.arms < 1 || p.arm_length < 1)
        throw UnsupportedFamilySize("ray needs arms >= 1 and arm_length >= 1");
      n = 1 + p.arms * p.arm_length;
      for (int a = 0; a < p.arms; ++a) {
        int first = 1 + a * p.arm_length;
        append_directed(edges, 0, first, p.direction);
        for (int i = 0; i + 1 < p.arm_length; ++i)
          append_directed(edges, first + i, first + i + 1, p.direction);
      }
      break;
    }
    case GraphFamily::Tree: {
      if (p.nodes < 2 || p.branching < 1)
        throw UnsupportedFamilySize("tree needs nodes >= 2, branching >= 1");
      n = p.nodes;
      for (int i = 0; i < n; ++i)
        for (int j = 1; j <= p.branching; ++j) {
          long long c = static_cast<long long>(p.branching) * i + j;
          if (c >= n) break;
          append_directed(edges, i, static_cast<int>(c), p.direction);
        }
      break;
    }
    case GraphFamily::Grid: {
      if (p.rows < 1 || p.cols < 1 || p.rows * p.cols < 2)
        throw UnsupportedFamilySize("grid needs at least two cells");
      n = p.rows * p.cols;
      auto id = [&](int r, int c) { return r * p.cols + c; };
      for (int r = 0; r < p.rows; ++r)
        for (int c = 0; c < p.cols; ++c) {
          if (c + 1 < p.cols)
            append_directed(edges, id(r, c), id(r, c + 1), EdgeDirection::Both);
          if (r + 1 < p.rows)
            append_directed(edges, id(r, c), id(r + 1, c), EdgeDirection::Both);
        }
      break;
    }
    case GraphFamily::Complete: {
      if (p.nodes < 2)
        throw UnsupportedFamilySize("complete needs nodes >= 2");
      n = p.nodes;
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (u != v) edges.push_back({u, v});
      break;
    }
    case GraphFamily::Bipartite: {
      if (p.left < 1 || p.right < 1)
        throw UnsupportedFamilySize("bipartite needs left >= 1, right >= 1");
      n = p.left + p.right;
      for (int l = 0; l < p.left; ++l)
        for (int r = 0; r < p.right; ++r)
          if (q >= 1.0 || structure.next_unit() < q)
            append_directed(edges, l, p.left + r, p.direction);
      break;
    }
    case GraphFamily::Dag: {
      if (p.nodes < 2) throw UnsupportedFamilySize("dag needs nodes >= 2");
      n = p.nodes;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (structure.next_unit() < q) edges.push_back({u, v});
      break;
    }
    case GraphFamily::ErdosRenyi: {
      if (p.nodes < 2)
        throw UnsupportedFamilySize("erdos_renyi needs nodes >= 2");
      n = p.nodes;
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (u != v && structure.next_unit() < q) edges.push_back({u, v});
      break;
    }
  }

  Graph g = Graph::from_edges(n, std::move(edges));
  const int m = g.edge_count();
  Eigen::VectorXd w(m);
  if (p.weight_rule == WeightRule::Constant) {
    w.setConstant(p.weight);
  } else {
    RngStream draws = RngStream(p.seed).child(1);
    for (int e = 0; e < m; ++e) w[e] = draws.next_unit();
    for (int v = 0; v < n; ++v) {
      if (g.in_degree(v) == 0) continue;
      auto block = w.segment(g.in_offset(v), g.in_degree(v));
      double sum = block.sum();
      if (sum > 1.0) block *= 1.0 / (sum + 1e-9);
    }
  }
  WeightVector wv = WeightVector::validated(g, std::move(w));
  return {std::move(g), std::move(wv)};
}

std::vector<int> relevance_set(const Graph& g, std::span<const int> seeds,
                               int v) {
  std::vector<int> s = normalized_seed_set(g, seeds);
  if (v < 0 || v >= g.node_count())
    throw ValidationError("target node out of range");
  NodeBits fwd = forward_reach(g, s);
  if (!fwd.contains(v)) return {};
  NodeBits back = backward_reach(g, v);
  std::vector<int> out;
  for (int u = 0; u < g.node_count(); ++u)
    if (fwd.contains(u) && back.contains(u)) out.push_back(u);
  return out;
}

Eigen::VectorXi relevance_counts(const Graph& g, std::span<const int> seeds) {
  std::vector<int> s = normalized_seed_set(g, seeds);
  const int n = g.node_count();
  NodeBits seed_bits(n);
  for (int x : s) seed_bits.add(x);
  NodeBits reach = forward_reach(g, s);
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(n);
  for (int u = 0; u < n; ++u) {
    if (!reach.contains(u)) continue;
    // v lies in relevance_set(S, v) for u exactly when u reaches v and u is
    // reachable from S; counting over v != seeds collapses to the size of
    // u's forward cone minus the seeds.
    NodeBits cone = forward_reach(g, std::span<const int>(&u, 1));
    counts[u] = cone.count_minus(seed_bits);
  }
  return counts;
}

double gamma_diagnostic(const Graph& g, int K, GammaMode mode,
                        std::int64_t cap) {
  const int n = g.node_count();
  if (K < 1 || K > n) throw ValidationError("K must lie in [1, node count]");
  if (mode == GammaMode::Bound) return (n - K) * std::sqrt(double(n));

  if (detail::count_combinations(n, K, static_cast<std::uint64_t>(cap)) >
      static_cast<std::uint64_t>(cap))
    throw EnumerationTooLarge("C(n,K) exceeds the seed-set cap");

  std::vector<NodeBits> cone;
  cone.reserve(n);
  for (int u = 0; u < n; ++u)
    cone.push_back(forward_reach(g, std::span<const int>(&u, 1)));

  double best_sq = 0.0;
  detail::for_each_combination(n, K, [&](const std::vector<int>& s) {
    NodeBits seed_bits(n);
    NodeBits reach(n);
    for (int x : s) {
      seed_bits.add(x);
      reach.merge(cone[x]);
    }
    double sq = 0.0;
    for (int u = 0; u < n; ++u) {
      if (!reach.contains(u)) continue;
      double c = cone[u].count_minus(seed_bits);
      sq += c * c;
    }
    best_sq = std::max(best_sq, sq);
  });
  return std::sqrt(best_sq);
}

}  // namespace ltoim
