#include "ltoim/etc_bandit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "ltoim/detail/enumeration.hpp"
#include "ltoim/errors.hpp"

namespace ltoim {

long exploration_budget(int edge_count, int node_count, long horizon,
                        BudgetMode mode, std::optional<double> delta_min) {
  if (edge_count < 1 || node_count < 1) {
    throw ValidationError("exploration budget needs a non-empty graph");
  }
  if (horizon < 1) {
    throw ValidationError("horizon must be positive");
  }
  const double m = static_cast<double>(edge_count);
  const double n = static_cast<double>(node_count);
  const double T = static_cast<double>(horizon);
  switch (mode) {
    case BudgetMode::Dependent: {
      if (!delta_min.has_value()) {
        throw MissingGap(
            "gap-dependent budget needs the minimum suboptimality gap");
      }
      const double gap = *delta_min;
      if (gap <= 0.0 || !std::isfinite(gap)) {
        throw ValidationError("suboptimality gap must be positive and finite");
      }
      const double lead = 2.0 * m * m * n * n / (gap * gap);
      const double raw = lead * std::log(T * gap * gap / (m * n * n * n));
      return std::max<long>(1, static_cast<long>(std::ceil(raw)));
    }
    case BudgetMode::Independent: {
      const long passes = horizon / node_count;
      if (passes < 1) {
        throw ConfigError("horizon is shorter than one exploration pass");
      }
      const double raw = 3.9 * std::pow(m * m * T / n, 2.0 / 3.0);
      const long k = static_cast<long>(std::ceil(raw));
      return std::clamp<long>(k, 1, passes);
    }
    case BudgetMode::Manual:
      throw ValidationError("manual budgets come from the run configuration");
  }
  throw ValidationError("unknown budget mode");
}

SeedSetGaps seed_set_gaps(const Graph& g, const WeightVector& w, int K,
                          double alpha, std::int64_t set_cap,
                          std::int64_t enum_cap) {
  if (K < 1) {
    throw ValidationError("seed budget must be positive");
  }
  if (alpha <= 0.0 || alpha > 1.0) {
    throw ValidationError("approximation scale must lie in (0, 1]");
  }
  const int n = g.node_count();
  const int kmax = std::min(K, n);
  const auto cap = static_cast<std::uint64_t>(set_cap);
  std::uint64_t total = 0;
  for (int s = 1; s <= kmax; ++s) {
    total += detail::count_combinations(n, s, cap);
    if (total > cap) {
      throw EnumerationTooLarge("seed set enumeration exceeds the cap");
    }
  }

  const SpreadEvaluator evaluate = make_exact_evaluator(g, w, enum_cap);
  SeedSetGaps gaps;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(total));
  for (int s = 1; s <= kmax; ++s) {
    detail::for_each_combination(n, s, [&](std::span<const int> set) {
      values.push_back(evaluate(set));
    });
  }
  gaps.opt = *std::max_element(values.begin(), values.end());
  const double threshold = alpha * gaps.opt;
  for (const double r : values) {
    if (r < threshold - 1e-12) {
      const double gap = threshold - r;
      gaps.delta_min = std::min(gaps.delta_min, gap);
      gaps.delta_max = std::max(gaps.delta_max, gap);
      ++gaps.bad_sets;
    }
  }
  return gaps;
}

WeightVector project_edge_means(const Graph& g, Eigen::VectorXd means) {
  if (means.size() != g.edge_count()) {
    throw ValidationError("mean vector length does not match the edge count");
  }
  means = means.cwiseMax(0.0).cwiseMin(1.0);
  for (int v = 0; v < g.node_count(); ++v) {
    const int d = g.in_degree(v);
    if (d == 0) continue;
    auto block = means.segment(g.in_offset(v), d);
    const double sum = block.sum();
    if (sum > 1.0) {
      block *= 1.0 / (sum + 1e-9);
    }
  }
  return WeightVector::validated(g, std::move(means));
}

EtcRunResult run_etc(const Graph& g, const WeightVector& w_true,
                     const EtcConfig& cfg, const ImOracle& im_oracle,
                     const SpreadEvaluator& benchmark_eval, double eta_opt,
                     RngStream run_stream, bool timing) {
  const int n = g.node_count();
  const int m = g.edge_count();
  const long T = cfg.horizon;
  if (cfg.seed_count < 1) {
    throw ValidationError("seed count must be positive");
  }
  if (T < 1) {
    throw ValidationError("horizon must be positive");
  }
  if (m < 1) {
    throw ValidationError("exploration needs at least one edge");
  }
  long k = 0;
  if (cfg.budget_mode == BudgetMode::Manual) {
    if (cfg.manual_k < 1) {
      throw ConfigError("manual exploration budget must be positive");
    }
    k = cfg.manual_k;
  } else {
    k = exploration_budget(m, n, T, cfg.budget_mode, cfg.delta_min);
  }
  if (k > T / n) {
    throw ConfigError("exploration budget " + std::to_string(k) +
                      " needs " + std::to_string(k * static_cast<long>(n)) +
                      " rounds but the horizon is " + std::to_string(T));
  }

  EtcRunResult result;
  result.records.reserve(static_cast<std::size_t>(T));
  result.estimates.successes.assign(static_cast<std::size_t>(m), 0);
  result.estimates.trials = k;
  double cum = 0.0;

  // Every explore round with the same seed has the same benchmark value.
  std::vector<double> node_spread(static_cast<std::size_t>(n), 0.0);
  for (int u = 0; u < n; ++u) {
    const int seed[] = {u};
    node_spread[static_cast<std::size_t>(u)] = benchmark_eval(seed);
  }

  const long explore_rounds = k * static_cast<long>(n);
  for (long t = 1; t <= explore_rounds; ++t) {
    const auto started = std::chrono::steady_clock::now();
    const int u = static_cast<int>((t - 1) % n);
    const std::vector<int> seeds{u};
    RngStream round = run_stream.child(static_cast<std::uint64_t>(t));
    RngStream cascade_stream = round.child(0);
    DiffusionTrace trace;
    if (cfg.model == DiffusionModel::LinearThreshold) {
      const ThresholdVector theta = sample_thresholds(g, cascade_stream);
      trace = diffuse_lt(g, w_true, seeds, theta);
    } else {
      trace = diffuse_ic(g, w_true, seeds, cascade_stream);
    }
    for (const auto& [v, e] : g.out_edges(u)) {
      // With u the only seed, v fires at step one with probability w(u->v)
      // under both models.
      if (trace.activation_time[v] == 1) {
        ++result.estimates.successes[static_cast<std::size_t>(e)];
      }
    }
    RegretRecord rec;
    rec.round = t;
    rec.seeds = seeds;
    rec.spread = node_spread[static_cast<std::size_t>(u)];
    rec.eta_opt = eta_opt;
    cum += eta_opt - rec.spread;
    rec.cum_regret = cum;
    if (timing) {
      rec.ms_elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();
    }
    result.records.push_back(std::move(rec));
  }

  Eigen::VectorXd raw(m);
  for (int e = 0; e < m; ++e) {
    raw(e) = static_cast<double>(result.estimates.successes[
                 static_cast<std::size_t>(e)]) /
             static_cast<double>(k);
  }
  const WeightVector estimate = project_edge_means(g, std::move(raw));
  result.estimates.mean = estimate.values();

  const OracleResult committed = im_oracle(estimate, cfg.seed_count);
  result.committed_seeds = committed.seeds;
  result.committed_value = committed.value;
  const double committed_spread = benchmark_eval(result.committed_seeds);

  for (long t = explore_rounds + 1; t <= T; ++t) {
    RegretRecord rec;
    rec.round = t;
    rec.seeds = result.committed_seeds;
    rec.spread = committed_spread;
    rec.eta_opt = eta_opt;
    cum += eta_opt - committed_spread;
    rec.cum_regret = cum;
    result.records.push_back(std::move(rec));
  }
  return result;
}

}  // namespace ltoim
