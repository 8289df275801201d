#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ltoim/diffusion.hpp"
#include "ltoim/graph.hpp"
#include "ltoim/rng.hpp"

namespace ltoim {

inline constexpr std::int64_t kDefaultEnumerationCap = 10'000'000;

// Exact per-node activation probabilities of the linear threshold cascade
// from the given seeds, by enumerating live-edge realizations (each node
// keeps at most one in-edge, edge e with probability w[e]); the reachable
// law of that coupling equals the threshold cascade's. Throws
// EnumerationTooLarge when the realization count exceeds cap.
Eigen::VectorXd exact_activation_marginals_lt(
    const Graph& g, const WeightVector& w, std::span<const int> seeds,
    std::int64_t cap = kDefaultEnumerationCap);

// Expected number of active nodes: the marginals summed.
double exact_spread_lt(const Graph& g, const WeightVector& w,
                       std::span<const int> seeds,
                       std::int64_t cap = kDefaultEnumerationCap);

struct SpreadEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample std (Bessel) / sqrt(simulations)
  int simulations = 0;
};

// Monte Carlo spread: `simulations` threshold cascades, simulation i driven
// by stream.child(i).
SpreadEstimate mc_spread(const Graph& g, const WeightVector& w,
                         std::span<const int> seeds, int simulations,
                         RngStream stream);

// A seed-set objective. Must accept the empty set (value 0); the factories
// below comply.
using SpreadEvaluator = std::function<double(std::span<const int>)>;

SpreadEvaluator make_exact_evaluator(const Graph& g, const WeightVector& w,
                                     std::int64_t cap = kDefaultEnumerationCap);
// Evaluation of a set S draws from base.child(hash(S)), so repeated calls
// with the same set return the same value.
SpreadEvaluator make_mc_evaluator(const Graph& g, const WeightVector& w,
                                  int simulations, RngStream base);

// A seed set with its objective value and the (alpha, beta) guarantee of
// the routine that produced it: the set's value is at least alpha * optimum
// with probability at least beta.
struct OracleResult {
  std::vector<int> seeds;
  double value = 0.0;
  double alpha = 1.0;
  double beta = 1.0;
};

// Greedy seed selection, min(K, n) additions, ties to the lowest node id.
// The lazy path keeps stale marginal gains in a max-heap and re-evaluates
// only the top; with a consistent submodular objective it selects exactly
// the plain greedy sets. alpha = 1 - 1/e, beta = 1.
OracleResult greedy_im(const Graph& g, int K, const SpreadEvaluator& evaluate,
                       bool lazy = true);

// Exhaustive optimum over seed sets of size exactly min(K, n) under the
// exact spread; ties to the lexicographically smallest set. alpha = beta = 1.
// Throws EnumerationTooLarge when C(n, K) exceeds set_cap or a spread
// evaluation exceeds enum_cap.
OracleResult exact_opt(const Graph& g, const WeightVector& w, int K,
                       std::int64_t set_cap = kDefaultSeedSetCap,
                       std::int64_t enum_cap = kDefaultEnumerationCap);

}  // namespace ltoim
