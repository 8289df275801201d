#pragma once

#include <span>

#include "ltoim/graph.hpp"
#include "ltoim/spread.hpp"

namespace ltoim {

// Longest simple directed path, counted in edges. Linear-time recursion on
// acyclic graphs; elsewhere an exhaustive path search with a step budget
// that throws EnumerationTooLarge when the graph is too entangled.
int longest_simple_path(const Graph& g);

// Exact expectation, under the w-trajectory, of
//   sum_u N(u) * sum_{tau in [tau1(u), min(tau2(u)-1, D)]} |delta . E_tau(u)|
// where delta = w' - w, E_tau(u) marks the in-neighbors of u active at time
// tau, tau1/tau2 are u's first-exposure and activation times, D is the
// longest simple path, and N(u) counts the nodes u can still reach outside
// the seed set. Seeds contribute nothing (they are never exposed).
double gom_rhs_exact(const Graph& g, const WeightVector& w,
                     const WeightVector& w_prime, std::span<const int> seeds,
                     std::int64_t cap = kDefaultEnumerationCap);

struct GomReport {
  double lhs = 0.0;  // |spread under w' - spread under w|
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool holds = false;  // slack >= -1e-9
};

// Bounded-smoothness check: a perturbation of the weights moves the
// expected spread by at most the exposure-weighted mass above.
GomReport verify_gom(const Graph& g, const WeightVector& w,
                     const WeightVector& w_prime, std::span<const int> seeds,
                     std::int64_t cap = kDefaultEnumerationCap);

struct UpdateBoundReport {
  int longest_path = 0;  // D
  // Slack of T(u) <= D * max_tau |delta . E_tau(u)| at its worst
  // (realization, node); negative means the strict form fails there.
  double worst_slack = 0.0;
  bool holds = false;
  // Same with D + 1 windows. A node first exposed at time 0 that never
  // fires is observed for exactly D + 1 steps, so this form is tight.
  double worst_slack_relaxed = 0.0;
  bool holds_relaxed = false;
};

// Per-node window-mass check behind the smoothness bound: each exposure
// window spans at most D + 1 steps, with equality exactly for nodes first
// exposed at time 0 that never activate; the D-step form is reported too
// because it fails on those nodes.
UpdateBoundReport verify_update_bound(const Graph& g, const WeightVector& w,
                                      const WeightVector& w_prime,
                                      std::span<const int> seeds,
                                      std::int64_t cap = kDefaultEnumerationCap);

}  // namespace ltoim
