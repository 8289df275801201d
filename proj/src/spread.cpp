#include "ltoim/spread.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "ltoim/detail/enumeration.hpp"
#include "ltoim/detail/live_edge.hpp"

namespace ltoim {

namespace detail {

void for_each_live_edge_trajectory(
    const Graph& g, const WeightVector& w, std::span<const int> sorted_seeds,
    std::int64_t cap,
    const std::function<void(double, std::span<const int>)>& fn) {
  const int n = g.node_count();

  std::vector<int> digit_nodes;  // nodes owning a realization digit
  unsigned __int128 states = 1;
  for (int v = 0; v < n; ++v) {
    if (g.in_degree(v) == 0) continue;
    digit_nodes.push_back(v);
    states *= static_cast<unsigned>(g.in_degree(v) + 1);
    if (states > static_cast<unsigned __int128>(cap))
      throw EnumerationTooLarge("live-edge realization count exceeds cap");
  }
  const int q = static_cast<int>(digit_nodes.size());

  // digit 0 = keep no in-edge, digit d >= 1 = keep in-edge d - 1.
  std::vector<double> none_prob(q);
  for (int i = 0; i < q; ++i) {
    int v = digit_nodes[i];
    none_prob[i] =
        std::max(0.0, 1.0 - w.values().segment(g.in_offset(v), g.in_degree(v)).sum());
  }

  std::vector<int> digit(q, 0);
  std::vector<int> parent(n, -1);
  // -2 unresolved, -3 on the current walk, -1 never active, >= 0 time.
  std::vector<int> times(n);
  std::vector<int> path;
  path.reserve(n);

  while (true) {
    double prob = 1.0;
    for (int i = 0; i < q && prob > 0.0; ++i) {
      int v = digit_nodes[i];
      prob *= digit[i] == 0 ? none_prob[i] : w[g.in_offset(v) + digit[i] - 1];
    }
    if (prob > 0.0) {
      for (int i = 0; i < q; ++i) {
        int v = digit_nodes[i];
        parent[v] = digit[i] == 0 ? -1 : g.in_neighbors(v)[digit[i] - 1];
      }
      std::fill(times.begin(), times.end(), -2);
      for (int s : sorted_seeds) times[s] = 0;
      for (int v = 0; v < n; ++v) {
        if (times[v] != -2) continue;
        path.clear();
        int x = v;
        while (x >= 0 && times[x] == -2) {
          times[x] = -3;
          path.push_back(x);
          x = parent[x];
        }
        // x < 0: dead chain; times[x] == -3: a seedless cycle; otherwise the
        // chain lands on a resolved node and times count up from it.
        int t = (x >= 0 && times[x] >= 0) ? times[x] : -1;
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
          if (t >= 0) ++t;
          times[*it] = t;
        }
      }
      fn(prob, times);
    }

    int i = 0;
    while (i < q) {
      if (++digit[i] <= g.in_degree(digit_nodes[i])) break;
      digit[i] = 0;
      ++i;
    }
    if (i == q) break;
  }
}

}  // namespace detail

Eigen::VectorXd exact_activation_marginals_lt(const Graph& g,
                                              const WeightVector& w,
                                              std::span<const int> seeds,
                                              std::int64_t cap) {
  std::vector<int> s = normalized_seed_set(g, seeds);
  Eigen::VectorXd marginals = Eigen::VectorXd::Zero(g.node_count());
  detail::for_each_live_edge_trajectory(
      g, w, s, cap, [&](double prob, std::span<const int> times) {
        for (int v = 0; v < g.node_count(); ++v)
          if (times[v] >= 0) marginals[v] += prob;
      });
  // Summation noise must not push a probability past its endpoints.
  return marginals.cwiseMax(0.0).cwiseMin(1.0);
}

double exact_spread_lt(const Graph& g, const WeightVector& w,
                       std::span<const int> seeds, std::int64_t cap) {
  return exact_activation_marginals_lt(g, w, seeds, cap).sum();
}

SpreadEstimate mc_spread(const Graph& g, const WeightVector& w,
                         std::span<const int> seeds, int simulations,
                         RngStream stream) {
  if (simulations <= 0) throw ValidationError("simulation count must be positive");
  std::vector<int> s = normalized_seed_set(g, seeds);
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < simulations; ++i) {
    RngStream run = stream.child(static_cast<std::uint64_t>(i));
    ThresholdVector theta = sample_thresholds(g, run);
    double count = diffuse_lt(g, w, s, theta).final_count();
    sum += count;
    sum_sq += count * count;
  }
  SpreadEstimate est;
  est.simulations = simulations;
  est.mean = sum / simulations;
  if (simulations > 1) {
    double var = (sum_sq - sum * sum / simulations) / (simulations - 1);
    est.std_error = std::sqrt(std::max(0.0, var) / simulations);
  }
  return est;
}

SpreadEvaluator make_exact_evaluator(const Graph& g, const WeightVector& w,
                                     std::int64_t cap) {
  // Captured by value so the evaluator owns its inputs.
  return [g, w, cap](std::span<const int> seeds) {
    return seeds.empty() ? 0.0 : exact_spread_lt(g, w, seeds, cap);
  };
}

SpreadEvaluator make_mc_evaluator(const Graph& g, const WeightVector& w,
                                  int simulations, RngStream base) {
  return [g, w, simulations, base](std::span<const int> seeds) {
    if (seeds.empty()) return 0.0;
    std::vector<int> s = normalized_seed_set(g, seeds);
    return mc_spread(g, w, s, simulations, base.child(detail::set_hash(s)))
        .mean;
  };
}

namespace {

OracleResult greedy_naive(const Graph& g, int K,
                          const SpreadEvaluator& evaluate) {
  const int n = g.node_count();
  OracleResult out;
  double value = 0.0;
  std::vector<char> chosen(n, 0);
  std::vector<int> trial;
  for (int step = 0; step < std::min(K, n); ++step) {
    int best = -1;
    double best_value = 0.0;
    for (int v = 0; v < n; ++v) {
      if (chosen[v]) continue;
      trial = out.seeds;
      trial.push_back(v);
      std::sort(trial.begin(), trial.end());
      double trial_value = evaluate(trial);
      if (best < 0 || trial_value > best_value) {
        best = v;
        best_value = trial_value;
      }
    }
    chosen[best] = 1;
    out.seeds.push_back(best);
    std::sort(out.seeds.begin(), out.seeds.end());
    value = best_value;
  }
  out.value = value;
  return out;
}

OracleResult greedy_lazy(const Graph& g, int K,
                         const SpreadEvaluator& evaluate) {
  const int n = g.node_count();
  // Max-heap on (gain, lower id first); fresh = gain computed against the
  // current seed set.
  struct Entry {
    double gain;
    int node;
    int step;
  };
  auto cmp = [](const Entry& a, const Entry& b) {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.node > b.node;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  for (int v = 0; v < n; ++v)
    heap.push({evaluate(std::vector<int>{v}), v, 0});

  OracleResult out;
  double value = 0.0;
  std::vector<int> trial;
  for (int step = 0; step < std::min(K, n); ++step) {
    while (true) {
      Entry top = heap.top();
      if (top.step == step) {
        heap.pop();
        out.seeds.push_back(top.node);
        std::sort(out.seeds.begin(), out.seeds.end());
        value += top.gain;
        break;
      }
      heap.pop();
      trial = out.seeds;
      trial.push_back(top.node);
      std::sort(trial.begin(), trial.end());
      heap.push({evaluate(trial) - value, top.node, step});
    }
  }
  out.value = value;
  return out;
}

}  // namespace

OracleResult greedy_im(const Graph& g, int K, const SpreadEvaluator& evaluate,
                       bool lazy) {
  if (K < 1) throw ValidationError("seed budget must be positive");
  OracleResult out =
      lazy ? greedy_lazy(g, K, evaluate) : greedy_naive(g, K, evaluate);
  out.alpha = 1.0 - 1.0 / std::numbers::e;
  out.beta = 1.0;
  return out;
}

OracleResult exact_opt(const Graph& g, const WeightVector& w, int K,
                       std::int64_t set_cap, std::int64_t enum_cap) {
  if (K < 1) throw ValidationError("seed budget must be positive");
  const int n = g.node_count();
  const int k = std::min(K, n);
  if (detail::count_combinations(n, k, static_cast<std::uint64_t>(set_cap)) >
      static_cast<std::uint64_t>(set_cap))
    throw EnumerationTooLarge("C(n,K) exceeds the seed-set cap");
  OracleResult out;
  bool first = true;
  detail::for_each_combination(n, k, [&](const std::vector<int>& s) {
    double value = exact_spread_lt(g, w, s, enum_cap);
    if (first || value > out.value) {
      out.seeds = s;
      out.value = value;
      first = false;
    }
  });
  return out;
}

}  // namespace ltoim
