#include "ltoim/diffusion.hpp"

#include <algorithm>
#include <string>

namespace ltoim {

std::vector<int> DiffusionTrace::set_at(int tau) const {
  int last = std::min<int>(tau, static_cast<int>(frontiers.size()) - 1);
  std::vector<int> out;
  for (int t = 0; t <= last; ++t)
    out.insert(out.end(), frontiers[t].begin(), frontiers[t].end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> DiffusionTrace::sets() const {
  std::vector<std::vector<int>> out;
  for (int t = 0; t < static_cast<int>(frontiers.size()); ++t)
    out.push_back(set_at(t));
  return out;
}

int DiffusionTrace::final_count() const {
  int c = 0;
  for (const auto& f : frontiers) c += static_cast<int>(f.size());
  return c;
}

ThresholdVector sample_thresholds(const Graph& g, RngStream& stream) {
  ThresholdVector theta(g.node_count());
  for (int v = 0; v < g.node_count(); ++v) theta[v] = stream.next_unit();
  return theta;
}

DiffusionTrace diffuse_lt(const Graph& g, const WeightVector& w,
                          std::span<const int> seeds,
                          const ThresholdVector& theta) {
  std::vector<int> s = normalized_seed_set(g, seeds);
  const int n = g.node_count();
  if (theta.size() != n)
    throw ValidationError("threshold vector size does not match node count");
  for (int v = 0; v < n; ++v)
    if (!(theta[v] >= 0.0 && theta[v] <= 1.0))
      throw ValidationError("threshold " + std::to_string(theta[v]) +
                            " outside [0,1]");

  DiffusionTrace trace;
  trace.model = DiffusionModel::LinearThreshold;
  trace.horizon = n - 1;
  trace.activation_time.assign(n, -1);
  Eigen::VectorXd incoming = Eigen::VectorXd::Zero(n);
  auto absorb = [&](int u) {
    for (auto [v, e] : g.out_edges(u)) incoming[v] += w[e];
  };
  for (int v : s) trace.activation_time[v] = 0;
  for (int v : s) absorb(v);
  trace.frontiers.push_back(s);

  for (int tau = 0; tau < trace.horizon; ++tau) {
    std::vector<int> next;
    for (int v = 0; v < n; ++v)
      if (trace.activation_time[v] < 0 && incoming[v] >= theta[v])
        next.push_back(v);
    if (next.empty()) break;
    for (int v : next) trace.activation_time[v] = tau + 1;
    for (int v : next) absorb(v);
    trace.frontiers.push_back(std::move(next));
  }
  return trace;
}

DiffusionTrace diffuse_ic(const Graph& g, const WeightVector& w,
                          std::span<const int> seeds, RngStream& stream) {
  std::vector<int> s = normalized_seed_set(g, seeds);
  const int n = g.node_count();
  DiffusionTrace trace;
  trace.model = DiffusionModel::IndependentCascade;
  trace.horizon = n - 1;
  trace.activation_time.assign(n, -1);
  for (int v : s) trace.activation_time[v] = 0;
  trace.frontiers.push_back(s);

  for (int tau = 0; tau < trace.horizon; ++tau) {
    std::vector<int> next;
    for (int u : trace.frontiers.back())
      for (auto [v, e] : g.out_edges(u)) {
        if (trace.activation_time[v] >= 0) continue;
        if (stream.next_unit() < w[e]) {
          trace.activation_time[v] = tau + 1;
          next.push_back(v);
        }
      }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    trace.frontiers.push_back(std::move(next));
  }
  return trace;
}

NodeFeedback extract_feedback(const DiffusionTrace& trace, const Graph& g) {
  const int n = g.node_count();
  const int never = trace.horizon + 1;
  NodeFeedback fb;
  fb.horizon = trace.horizon;
  fb.nodes.resize(n);
  for (int v = 0; v < n; ++v) {
    NodeFeedback::NodeRecord& rec = fb.nodes[v];
    if (trace.activation_time[v] == 0) {
      rec = {never, never, true, true, {}};
      continue;
    }
    rec.activated = trace.activation_time[v] > 0;
    rec.tau2 = rec.activated ? trace.activation_time[v] : never;
    rec.tau1 = never;
    auto nbrs = g.in_neighbors(v);
    for (int u : nbrs) {
      int t = trace.activation_time[u];
      if (t >= 0) rec.tau1 = std::min(rec.tau1, t);
    }
    int last = std::min(rec.tau2 - 1, trace.horizon);
    for (int tau = rec.tau1; tau <= last; ++tau) {
      std::vector<int> set;
      for (int i = 0; i < static_cast<int>(nbrs.size()); ++i)
        if (trace.active_at(nbrs[i], tau)) set.push_back(i);
      rec.edge_sets.push_back(std::move(set));
    }
  }
  return fb;
}

ObservationPair observation_for(const NodeFeedback& fb, const Graph& g, int v,
                                int tau) {
  const NodeFeedback::NodeRecord& rec = fb.nodes[v];
  int k = tau - rec.tau1;
  if (k < 0 || k >= static_cast<int>(rec.edge_sets.size()))
    throw ValidationError("time " + std::to_string(tau) +
                          " outside the observation window of node " +
                          std::to_string(v));
  ObservationPair pair;
  pair.indicator = Eigen::VectorXd::Zero(g.in_degree(v));
  for (int pos : rec.edge_sets[k]) pair.indicator[pos] = 1.0;
  pair.label = (rec.activated && tau == rec.tau2 - 1) ? 1.0 : 0.0;
  return pair;
}

std::map<int, ObservationPair> distill_update(const NodeFeedback& fb,
                                              const Graph& g,
                                              RngStream& stream) {
  std::map<int, ObservationPair> out;
  for (int v = 0; v < static_cast<int>(fb.nodes.size()); ++v) {
    const NodeFeedback::NodeRecord& rec = fb.nodes[v];
    if (rec.seed || rec.edge_sets.empty()) continue;
    int tau = rec.tau1 + static_cast<int>(stream.next_below(
                             static_cast<std::uint32_t>(rec.edge_sets.size())));
    out.emplace(v, observation_for(fb, g, v, tau));
  }
  return out;
}

}  // namespace ltoim
