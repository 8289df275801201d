#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "ltoim/linucb.hpp"

namespace ltoim {

enum class BudgetMode {
  Dependent,    // needs the minimum suboptimality gap
  Independent,  // gap-free, horizon-clamped
  Manual        // per-edge count supplied by the caller
};

// Per-edge exploration sample count k for an m-edge, n-node instance over T
// rounds. Dependent: max(1, ceil((2 m^2 n^2 / gap^2) ln(T gap^2 / (m n^3)))),
// deliberately unclamped so an infeasible horizon surfaces as a ConfigError
// at run time instead of a silently shrunken budget. Independent:
// ceil(3.9 (m^2 T / n)^(2/3)) clamped to [1, floor(T/n)].
long exploration_budget(int edge_count, int node_count, long horizon,
                        BudgetMode mode,
                        std::optional<double> delta_min = std::nullopt);

// Suboptimality gaps alpha * opt - r(S) over all seed sets of size 1..K.
// A set is bad when its spread falls short of alpha * opt; delta_min/
// delta_max are the smallest and largest bad-set gaps (delta_min stays
// +inf when every set is good).
struct SeedSetGaps {
  double delta_min = std::numeric_limits<double>::infinity();
  double delta_max = 0.0;
  double opt = 0.0;
  long bad_sets = 0;
};

SeedSetGaps seed_set_gaps(const Graph& g, const WeightVector& w, int K,
                          double alpha,
                          std::int64_t set_cap = kDefaultSeedSetCap,
                          std::int64_t enum_cap = kDefaultEnumerationCap);

// Clamps raw per-edge means into [0,1] and rescales any in-weight block
// whose sum exceeds 1, so the result is always a feasible weight vector.
WeightVector project_edge_means(const Graph& g, Eigen::VectorXd means);

struct EtcConfig {
  int seed_count = 1;
  long horizon = 0;
  DiffusionModel model = DiffusionModel::LinearThreshold;
  BudgetMode budget_mode = BudgetMode::Independent;
  long manual_k = 0;  // consulted only in Manual mode
  std::optional<double> delta_min;
};

struct EdgeEstimates {
  Eigen::VectorXd mean;         // projected means, canonical edge order
  std::vector<long> successes;  // raw first-step activation counts per edge
  long trials = 0;              // exploration rounds per seed node
};

struct EtcRunResult {
  std::vector<RegretRecord> records;
  EdgeEstimates estimates;
  std::vector<int> committed_seeds;
  double committed_value = 0.0;
};

// Explore-then-commit: rounds 1..n*k seed node (t-1) mod n alone and count
// which out-neighbors fire on the first step (a Bernoulli draw of each
// out-edge weight under either cascade model); the projected means are
// handed to im_oracle once and its seed set is replayed for the remaining
// rounds. Round t draws from run_stream.child(t). Regret bookkeeping
// matches the bandit runner: benchmark_eval values the chosen set under
// the true weights and cum_regret accumulates eta_opt - spread. Throws
// ConfigError when n*k exceeds the horizon (n*k == T, pure exploration,
// is allowed).
EtcRunResult run_etc(const Graph& g, const WeightVector& w_true,
                     const EtcConfig& cfg, const ImOracle& im_oracle,
                     const SpreadEvaluator& benchmark_eval, double eta_opt,
                     RngStream run_stream, bool timing = false);

}  // namespace ltoim
