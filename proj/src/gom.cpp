#include "ltoim/gom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ltoim/detail/live_edge.hpp"
#include "ltoim/errors.hpp"

namespace ltoim {

namespace {

constexpr std::int64_t kPathSearchBudget = 10'000'000;

int longest_path_acyclic(const Graph& g) {
  int best = 0;
  std::vector<int> len(static_cast<std::size_t>(g.node_count()), 0);
  for (const auto& layer : g.topological_layers()) {
    for (const int v : layer) {
      for (const int u : g.in_neighbors(v)) {
        len[v] = std::max(len[v], len[u] + 1);
      }
      best = std::max(best, len[v]);
    }
  }
  return best;
}

// Exposure bookkeeping shared by the smoothness and window checks: calls
// visit(u, tau1, hi, window_sums) for every non-seed node exposed in the
// realization, where window_sums[k] = delta . E_{tau1 + k}(u) for
// tau1 + k <= hi = min(tau2 - 1, D).
template <class Visit>
void for_each_window(const Graph& g, const std::vector<char>& is_seed,
                     const Eigen::VectorXd& delta, std::span<const int> times,
                     int longest, Visit&& visit) {
  const int n = g.node_count();
  const int never = n;  // past every feasible activation time
  std::vector<double> sums;
  for (int u = 0; u < n; ++u) {
    if (is_seed[static_cast<std::size_t>(u)] || g.in_degree(u) == 0) continue;
    const auto sources = g.in_neighbors(u);
    int tau1 = never;
    for (const int s : sources) {
      if (times[static_cast<std::size_t>(s)] >= 0) {
        tau1 = std::min(tau1, times[static_cast<std::size_t>(s)]);
      }
    }
    if (tau1 >= never || tau1 > longest) continue;
    const int t_u = times[static_cast<std::size_t>(u)];
    const int tau2 = t_u >= 0 ? t_u : never;
    const int hi = std::min(tau2 - 1, longest);
    sums.clear();
    for (int tau = tau1; tau <= hi; ++tau) {
      double sum = 0.0;
      for (int p = 0; p < static_cast<int>(sources.size()); ++p) {
        const int t_s = times[static_cast<std::size_t>(sources[p])];
        if (t_s >= 0 && t_s <= tau) {
          sum += delta(g.in_offset(u) + p);
        }
      }
      sums.push_back(sum);
    }
    visit(u, tau1, hi, std::span<const double>(sums));
  }
}

}  // namespace

int longest_simple_path(const Graph& g) {
  if (g.is_acyclic()) {
    return longest_path_acyclic(g);
  }
  const int n = g.node_count();
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  std::int64_t steps = 0;
  int best = 0;
  auto dfs = [&](auto&& self, int u, int len) -> void {
    if (++steps > kPathSearchBudget) {
      throw EnumerationTooLarge("path search budget exhausted");
    }
    best = std::max(best, len);
    for (const auto& [v, e] : g.out_edges(u)) {
      if (visited[static_cast<std::size_t>(v)]) continue;
      visited[static_cast<std::size_t>(v)] = 1;
      self(self, v, len + 1);
      visited[static_cast<std::size_t>(v)] = 0;
    }
  };
  for (int s = 0; s < n; ++s) {
    visited[static_cast<std::size_t>(s)] = 1;
    dfs(dfs, s, 0);
    visited[static_cast<std::size_t>(s)] = 0;
  }
  return best;
}

double gom_rhs_exact(const Graph& g, const WeightVector& w,
                     const WeightVector& w_prime, std::span<const int> seeds,
                     std::int64_t cap) {
  if (w_prime.size() != w.size()) {
    throw ValidationError("weight vectors must cover the same edges");
  }
  const std::vector<int> S = normalized_seed_set(g, seeds);
  const int longest = longest_simple_path(g);
  const Eigen::VectorXi counts = relevance_counts(g, S);
  const Eigen::VectorXd delta = w_prime.values() - w.values();
  std::vector<char> is_seed(static_cast<std::size_t>(g.node_count()), 0);
  for (const int s : S) is_seed[static_cast<std::size_t>(s)] = 1;

  double rhs = 0.0;
  detail::for_each_live_edge_trajectory(
      g, w, S, cap, [&](double prob, std::span<const int> times) {
        double total = 0.0;
        for_each_window(g, is_seed, delta, times, longest,
                        [&](int u, int, int, std::span<const double> sums) {
                          if (counts(u) == 0) return;
                          double mass = 0.0;
                          for (const double s : sums) mass += std::abs(s);
                          total += counts(u) * mass;
                        });
        rhs += prob * total;
      });
  return rhs;
}

GomReport verify_gom(const Graph& g, const WeightVector& w,
                     const WeightVector& w_prime, std::span<const int> seeds,
                     std::int64_t cap) {
  GomReport report;
  const std::vector<int> S = normalized_seed_set(g, seeds);
  report.lhs = std::abs(exact_spread_lt(g, w_prime, S, cap) -
                        exact_spread_lt(g, w, S, cap));
  report.rhs = gom_rhs_exact(g, w, w_prime, S, cap);
  report.slack = report.rhs - report.lhs;
  report.holds = report.slack >= -1e-9;
  return report;
}

UpdateBoundReport verify_update_bound(const Graph& g, const WeightVector& w,
                                      const WeightVector& w_prime,
                                      std::span<const int> seeds,
                                      std::int64_t cap) {
  if (w_prime.size() != w.size()) {
    throw ValidationError("weight vectors must cover the same edges");
  }
  const std::vector<int> S = normalized_seed_set(g, seeds);
  const int longest = longest_simple_path(g);
  const Eigen::VectorXd delta = w_prime.values() - w.values();
  std::vector<char> is_seed(static_cast<std::size_t>(g.node_count()), 0);
  for (const int s : S) is_seed[static_cast<std::size_t>(s)] = 1;

  UpdateBoundReport report;
  report.longest_path = longest;
  const double inf = std::numeric_limits<double>::infinity();
  report.worst_slack = inf;
  report.worst_slack_relaxed = inf;
  detail::for_each_live_edge_trajectory(
      g, w, S, cap, [&](double, std::span<const int> times) {
        for_each_window(g, is_seed, delta, times, longest,
                        [&](int, int, int, std::span<const double> sums) {
                          double mass = 0.0;
                          double peak = 0.0;
                          for (const double s : sums) {
                            mass += std::abs(s);
                            peak = std::max(peak, std::abs(s));
                          }
                          report.worst_slack = std::min(
                              report.worst_slack, longest * peak - mass);
                          report.worst_slack_relaxed =
                              std::min(report.worst_slack_relaxed,
                                       (longest + 1) * peak - mass);
                        });
      });
  report.holds = report.worst_slack >= -1e-9;
  report.holds_relaxed = report.worst_slack_relaxed >= -1e-9;
  return report;
}

}  // namespace ltoim
