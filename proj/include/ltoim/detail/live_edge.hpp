#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "ltoim/graph.hpp"

namespace ltoim::detail {

// Enumerates every positive-probability live-edge realization: each node
// with in-edges independently keeps at most one of them (edge e with
// probability w[e], none with the leftover mass). For each realization,
// fn(prob, times) receives its probability and the activation time of every
// node when the cascade starts from sorted_seeds and flows along kept edges
// (-1 = never reached). The realization law does not depend on the seeds;
// activation times follow the parent chains, so they never exceed n - 1.
// Throws EnumerationTooLarge when the state count exceeds cap.
void for_each_live_edge_trajectory(
    const Graph& g, const WeightVector& w, std::span<const int> sorted_seeds,
    std::int64_t cap, const std::function<void(double, std::span<const int>)>& fn);

}  // namespace ltoim::detail
