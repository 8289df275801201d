#include "ltoim/linucb.hpp"

#include <chrono>
#include <cmath>
#include <string>
#include <utility>

#include "ltoim/errors.hpp"

namespace ltoim {

double confidence_radius(int N, long round, double delta) {
  if (delta <= 0.0 || delta > 1.0) {
    throw InvalidDelta("delta must lie in (0, 1], got " + std::to_string(delta));
  }
  if (N < 1) {
    throw ValidationError("confidence radius needs at least one coordinate");
  }
  if (round < 0) {
    throw ValidationError("confidence radius round must be non-negative");
  }
  const double n = static_cast<double>(N);
  const double t = static_cast<double>(round);
  return std::sqrt(n * std::log1p(t * n) + 2.0 * std::log(1.0 / delta)) +
         std::sqrt(n);
}

LinUcbState::LinUcbState(const Graph& g, LinUcbConfig cfg)
    : g_(&g), cfg_(cfg) {
  if (cfg_.seed_count < 1) {
    throw ValidationError("seed count must be positive");
  }
  if (cfg_.delta <= 0.0 || cfg_.delta > 1.0) {
    throw InvalidDelta("delta must lie in (0, 1], got " + std::to_string(cfg_.delta));
  }
  nodes_.resize(static_cast<std::size_t>(g.node_count()));
  for (int v = 0; v < g.node_count(); ++v) {
    const int d = g.in_degree(v);
    if (d == 0) continue;
    NodeState& ns = nodes_[static_cast<std::size_t>(v)];
    ns.M = Eigen::MatrixXd::Identity(d, d);
    ns.Minv = Eigen::MatrixXd::Identity(d, d);
    ns.b = Eigen::VectorXd::Zero(d);
    ns.what = Eigen::VectorXd::Zero(d);
  }
}

const LinUcbState::NodeState& LinUcbState::node(int v) const {
  if (v < 0 || v >= g_->node_count() || g_->in_degree(v) == 0) {
    throw ValidationError("node has no regression state");
  }
  return nodes_[static_cast<std::size_t>(v)];
}

LinUcbState::NodeState& LinUcbState::node(int v) {
  return const_cast<NodeState&>(std::as_const(*this).node(v));
}

double LinUcbState::radius(int v, long t) const {
  node(v);  // existence check
  if (cfg_.fixed_radius >= 0.0) return cfg_.fixed_radius;
  const int N = cfg_.radius_mode == RadiusMode::PerNode ? g_->in_degree(v)
                                                        : g_->node_count();
  return confidence_radius(N, t, cfg_.delta);
}

ConfidenceSet LinUcbState::confidence_set(long t) const {
  ConfidenceSet cs;
  for (int v = 0; v < g_->node_count(); ++v) {
    if (g_->in_degree(v) == 0) continue;
    const NodeState& ns = nodes_[static_cast<std::size_t>(v)];
    cs.set(v, NodeEllipsoid(ns.M, ns.b, radius(v, t)));
  }
  return cs;
}

void LinUcbState::observe(int v, const ObservationPair& pair) {
  NodeState& ns = node(v);
  if (pair.indicator.size() != ns.M.rows()) {
    throw ValidationError("observation dimension does not match in-degree");
  }
  const Eigen::VectorXd& a = pair.indicator;
  // Rank-one inverse update; the direct gramian rides along as the
  // reference the ellipsoids are built from.
  const Eigen::VectorXd u = ns.Minv * a;
  const double denom = 1.0 + a.dot(u);
  ns.Minv.noalias() -= (u * u.transpose()) / denom;
  ns.M.noalias() += a * a.transpose();
  ns.b += pair.label * a;
  ns.what.noalias() = ns.Minv * ns.b;
}

void LinUcbState::set_estimate(int v, const Eigen::Ref<const Eigen::VectorXd>& w) {
  NodeState& ns = node(v);
  if (w.size() != ns.M.rows()) {
    throw ValidationError("estimate dimension does not match in-degree");
  }
  ns.b.noalias() = ns.M * w;
  ns.what.noalias() = ns.Minv * ns.b;
}

bool LinUcbState::covers(int v, const Eigen::Ref<const Eigen::VectorXd>& w,
                         long t) const {
  const NodeState& ns = node(v);
  if (w.size() != ns.M.rows()) {
    throw ValidationError("weight dimension does not match in-degree");
  }
  const Eigen::VectorXd d = w - ns.what;
  const double norm = std::sqrt(std::max(0.0, d.dot(ns.M * d)));
  return norm <= radius(v, t);
}

PairOracle make_pair_oracle(PairOracleKind kind, ImOracle im_oracle,
                            double epsilon, std::int64_t net_cap,
                            BoxMode mode) {
  return [kind, im = std::move(im_oracle), epsilon, net_cap, mode](
             const Graph& g, const ConfidenceSet& cs, int K) -> PairResult {
    PairOracleKind resolved = kind;
    if (resolved == PairOracleKind::Auto) {
      if (g.max_in_degree() <= 1) {
        resolved = PairOracleKind::EdgeUcb;
      } else if (g.is_acyclic()) {
        resolved = PairOracleKind::DagGreedy;
      } else {
        resolved = PairOracleKind::EpsilonNet;
      }
    }
    switch (resolved) {
      case PairOracleKind::EdgeUcb:
        return pair_oracle_edge_ucb(g, cs, K, im);
      case PairOracleKind::DagGreedy:
        return dag_greedy_pair_oracle(g, cs, K, mode);
      case PairOracleKind::EpsilonNet:
        return epsilon_net_pair_oracle(g, cs, K, epsilon, im, net_cap);
      case PairOracleKind::Auto:
        break;
    }
    throw ValidationError("unresolved pair oracle kind");
  };
}

StepResult lt_linucb_step(LinUcbState& state, const Graph& g,
                          const WeightVector& w_true, const PairOracle& oracle,
                          RngStream round_stream) {
  const long t = state.round() + 1;
  const ConfidenceSet cs = state.confidence_set(t);
  PairResult choice = oracle(g, cs, state.config().seed_count);

  RngStream theta_stream = round_stream.child(0);
  const ThresholdVector theta = sample_thresholds(g, theta_stream);
  DiffusionTrace trace = diffuse_lt(g, w_true, choice.seeds, theta);
  const NodeFeedback fb = extract_feedback(trace, g);
  RngStream distill_stream = round_stream.child(1);
  const auto updates = distill_update(fb, g, distill_stream);
  for (const auto& [v, pair] : updates) {
    state.observe(v, pair);
  }
  state.advance();
  return {std::move(choice), std::move(trace)};
}

LinUcbRunResult lt_linucb_run(const Graph& g, const WeightVector& w_true,
                              const LinUcbConfig& cfg, long T,
                              const PairOracle& oracle,
                              const SpreadEvaluator& benchmark_eval,
                              double eta_opt, RngStream run_stream,
                              const WeightVector* coverage_truth,
                              bool timing) {
  if (T < 1) {
    throw ValidationError("horizon must be positive");
  }
  LinUcbState state(g, cfg);
  LinUcbRunResult result;
  result.records.reserve(static_cast<std::size_t>(T));
  double cum = 0.0;
  for (long t = 1; t <= T; ++t) {
    const auto started = std::chrono::steady_clock::now();
    StepResult step = lt_linucb_step(state, g, w_true, oracle,
                                     run_stream.child(static_cast<std::uint64_t>(t)));
    if (coverage_truth != nullptr) {
      for (int v = 0; v < g.node_count(); ++v) {
        if (g.in_degree(v) == 0) continue;
        ++result.coverage_checks;
        if (!state.covers(v, in_weights(g, *coverage_truth, v), t)) {
          ++result.coverage_violations;
        }
      }
    }
    RegretRecord rec;
    rec.round = t;
    rec.seeds = step.choice.seeds;
    rec.spread = benchmark_eval(rec.seeds);
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
  result.any_violation = result.coverage_violations > 0;
  return result;
}

}  // namespace ltoim
