#include "ltoim/wcim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ltoim {

namespace {

// Weights for every node start at its ellipsoid center; nodes re-optimized
// later overwrite their segment.
Eigen::VectorXd center_weights(const Graph& g, const ConfidenceSet& cs) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(g.edge_count());
  for (int v = 0; v < g.node_count(); ++v)
    if (g.in_degree(v) > 0)
      w.segment(g.in_offset(v), g.in_degree(v)) = cs.at(v).center();
  return w;
}

}  // namespace

PairResult pair_oracle_edge_ucb(const Graph& g, const ConfidenceSet& cs,
                                int K, const ImOracle& im_oracle) {
  if (g.max_in_degree() > 1)
    throw IndegreeTooLarge(
        "edge-wise upper confidence bounds need in-degree at most 1");
  Eigen::VectorXd u = Eigen::VectorXd::Zero(g.edge_count());
  for (int v = 0; v < g.node_count(); ++v) {
    if (g.in_degree(v) == 0) continue;
    const NodeEllipsoid& ell = cs.at(v);
    double ucb =
        ell.center()[0] + ell.radius() * std::sqrt(ell.inverse()(0, 0));
    u[g.in_offset(v)] = std::clamp(ucb, 0.0, 1.0);
  }
  WeightVector wv = WeightVector::validated(g, u);
  OracleResult im = im_oracle(wv, K);
  return {im.seeds, wv.values(), im.value};
}

DagValueResult wcim_value_dag(const Graph& g, const ConfidenceSet& cs,
                              std::span<const int> seeds, BoxMode mode) {
  std::vector<int> s = normalized_seed_set(g, seeds);
  if (!g.is_acyclic()) throw NotADag("optimistic cascade value needs a DAG");
  const int n = g.node_count();

  std::vector<char> is_seed(n, 0);
  for (int v : s) is_seed[v] = 1;

  // Kahn order with the seeds' in-edges deleted: seeds enter immediately.
  std::vector<int> indeg(n);
  for (int v = 0; v < n; ++v) indeg[v] = is_seed[v] ? 0 : g.in_degree(v);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) queue.push_back(v);

  DagValueResult out;
  out.per_node = Eigen::VectorXd::Zero(n);
  out.weights = center_weights(g, cs);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    if (is_seed[v]) {
      out.per_node[v] = 1.0;
    } else if (g.in_degree(v) > 0) {
      auto nbrs = g.in_neighbors(v);
      Eigen::VectorXd c(nbrs.size());
      for (int i = 0; i < static_cast<int>(nbrs.size()); ++i)
        c[i] = out.per_node[nbrs[i]];
      LinearMaxResult best = max_linear_over_ellipsoid(c, cs.at(v), mode);
      out.per_node[v] = best.value;
      out.weights.segment(g.in_offset(v), g.in_degree(v)) = best.argmax;
    }
    for (auto [t, e] : g.out_edges(v)) {
      (void)e;
      if (!is_seed[t] && --indeg[t] == 0) queue.push_back(t);
    }
  }
  out.total = out.per_node.sum();
  return out;
}

double bipartite_value(const Graph& g, const ConfidenceSet& cs,
                       std::span<const int> seeds, bool include_seed_count,
                       Eigen::VectorXd* weights_out, BoxMode mode) {
  std::vector<int> s = normalized_seed_set(g, seeds);
  const int n = g.node_count();
  for (int v = 0; v < n; ++v)
    if (g.in_degree(v) > 0 && g.out_degree(v) > 0)
      throw NotBipartite("node " + std::to_string(v) +
                         " has both in- and out-edges");
  for (int v : s)
    if (g.in_degree(v) > 0)
      throw NotBipartite("seed " + std::to_string(v) + " sits on the in side");

  std::vector<char> is_seed(n, 0);
  for (int v : s) is_seed[v] = 1;

  Eigen::VectorXd weights = center_weights(g, cs);
  double total = include_seed_count ? static_cast<double>(s.size()) : 0.0;
  for (int v = 0; v < n; ++v) {
    if (g.in_degree(v) == 0) continue;
    auto nbrs = g.in_neighbors(v);
    Eigen::VectorXd c(nbrs.size());
    for (int i = 0; i < static_cast<int>(nbrs.size()); ++i)
      c[i] = is_seed[nbrs[i]] ? 1.0 : 0.0;
    LinearMaxResult best = max_linear_over_ellipsoid(c, cs.at(v), mode);
    total += best.value;
    weights.segment(g.in_offset(v), g.in_degree(v)) = best.argmax;
  }
  if (weights_out) *weights_out = std::move(weights);
  return total;
}

PairResult greedy_pair_oracle(const Graph& g, int K, const SetValueFn& value,
                              std::span<const int> candidates) {
  if (K < 1) throw ValidationError("seed budget must be positive");
  std::vector<int> pool;
  if (candidates.empty()) {
    pool.resize(g.node_count());
    for (int v = 0; v < g.node_count(); ++v) pool[v] = v;
  } else {
    pool = normalized_seed_set(g, candidates);
  }
  std::vector<char> chosen(pool.size(), 0);
  std::vector<int> seeds;
  std::vector<int> trial;
  const int budget = std::min<int>(K, static_cast<int>(pool.size()));
  for (int step = 0; step < budget; ++step) {
    int best = -1;
    double best_value = 0.0;
    for (int i = 0; i < static_cast<int>(pool.size()); ++i) {
      if (chosen[i]) continue;
      trial = seeds;
      trial.push_back(pool[i]);
      std::sort(trial.begin(), trial.end());
      double trial_value = value(trial).first;
      if (best < 0 || trial_value > best_value) {
        best = i;
        best_value = trial_value;
      }
    }
    chosen[best] = 1;
    seeds.push_back(pool[best]);
    std::sort(seeds.begin(), seeds.end());
  }
  auto [final_value, weights] = value(seeds);
  return {std::move(seeds), std::move(weights), final_value};
}

PairResult dag_greedy_pair_oracle(const Graph& g, const ConfidenceSet& cs,
                                  int K, BoxMode mode) {
  return greedy_pair_oracle(
      g, K, [&](std::span<const int> seeds) {
        DagValueResult r = wcim_value_dag(g, cs, seeds, mode);
        return std::make_pair(r.total, std::move(r.weights));
      });
}

PairResult epsilon_net_pair_oracle(const Graph& g, const ConfidenceSet& cs,
                                   int K, double eps,
                                   const ImOracle& im_oracle,
                                   std::int64_t cap) {
  if (!(eps > 0.0)) throw ValidationError("grid pitch parameter must be positive");
  const int n = g.node_count();
  const int m = g.edge_count();
  const double pitch = eps / std::sqrt(static_cast<double>(std::max(1, m)));

  std::vector<int> grid_nodes;
  std::vector<std::vector<Eigen::VectorXd>> candidates;
  for (int v = 0; v < n; ++v) {
    int d = g.in_degree(v);
    if (d == 0) continue;
    const NodeEllipsoid& ell = cs.at(v);

    // Per-coordinate grids across the ellipsoid's axis extent inside [0,1].
    std::vector<std::vector<double>> axes(d);
    bool feasible = true;
    for (int i = 0; i < d && feasible; ++i) {
      double extent = ell.radius() * std::sqrt(std::max(0.0, ell.inverse()(i, i)));
      double lo = std::max(0.0, ell.center()[i] - extent);
      double hi = std::min(1.0, ell.center()[i] + extent);
      if (hi < lo) {
        feasible = false;
        break;
      }
      for (int k = 0;; ++k) {
        double t = lo + k * pitch;
        if (t >= hi - 1e-12) break;
        axes[i].push_back(t);
      }
      axes[i].push_back(hi);
    }

    std::vector<Eigen::VectorXd> pts;
    if (feasible) {
      std::vector<int> digit(d, 0);
      Eigen::VectorXd p(d);
      while (true) {
        for (int i = 0; i < d; ++i) p[i] = axes[i][digit[i]];
        if (p.sum() <= 1.0 + 1e-9 && ell.contains(p, /*box=*/false, 1e-9))
          pts.push_back(p);
        int i = 0;
        while (i < d) {
          if (++digit[i] < static_cast<int>(axes[i].size())) break;
          digit[i] = 0;
          ++i;
        }
        if (i == d) break;
      }
    }
    if (pts.empty()) {
      // Nothing on the grid survives; fall back to the feasible projection
      // of the center.
      Eigen::VectorXd p = ell.center().cwiseMax(0.0).cwiseMin(1.0);
      double sum = p.sum();
      if (sum > 1.0) p *= 1.0 / (sum + 1e-9);
      pts.push_back(std::move(p));
    }
    grid_nodes.push_back(v);
    candidates.push_back(std::move(pts));
  }

  unsigned __int128 count = 1;
  for (const auto& pts : candidates) {
    count *= pts.size();
    if (count > static_cast<unsigned __int128>(cap))
      throw NetTooLarge("weight grid candidate count exceeds cap");
  }

  PairResult best;
  bool first = true;
  const int q = static_cast<int>(grid_nodes.size());
  std::vector<int> digit(q, 0);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
  while (true) {
    for (int i = 0; i < q; ++i) {
      int v = grid_nodes[i];
      w.segment(g.in_offset(v), g.in_degree(v)) = candidates[i][digit[i]];
    }
    OracleResult im = im_oracle(WeightVector::validated(g, w), K);
    if (first || im.value > best.value) {
      best = {im.seeds, w, im.value};
      first = false;
    }
    int i = 0;
    while (i < q) {
      if (++digit[i] < static_cast<int>(candidates[i].size())) break;
      digit[i] = 0;
      ++i;
    }
    if (i == q) break;
  }
  return best;
}

SubmodularityReport submodularity_probe(
    const std::function<double(std::span<const int>)>& f, int universe,
    double tolerance) {
  if (universe < 1) throw ValidationError("universe must be non-empty");
  if (universe > 12)
    throw EnumerationTooLarge("submodularity probe universe capped at 12");

  auto members = [](unsigned mask) {
    std::vector<int> out;
    for (int i = 0; mask >> i; ++i)
      if ((mask >> i) & 1u) out.push_back(i);
    return out;
  };
  const unsigned full = (1u << universe) - 1u;
  std::vector<double> value(full + 1);
  for (unsigned mask = 0; mask <= full; ++mask) value[mask] = f(members(mask));

  SubmodularityReport report;
  for (int u = 0; u < universe; ++u) {
    const unsigned rest = full & ~(1u << u);
    // All S' within rest, then all strict subsets S of S'.
    for (unsigned large = 0;; large = (large - rest) & rest) {
      for (unsigned small = (large - 1) & large; large != 0;
           small = (small - 1) & large) {
        ++report.checked;
        double small_gain = value[small | (1u << u)] - value[small];
        double large_gain = value[large | (1u << u)] - value[large];
        if (small_gain < large_gain - tolerance)
          report.violations.push_back({members(small), members(large), u,
                                       small_gain, large_gain});
        if (small == 0) break;
      }
      if (large == rest) break;
    }
  }
  return report;
}

}  // namespace ltoim
