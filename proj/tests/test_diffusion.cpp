#include "ltoim/diffusion.hpp"

#include <vector>

#include "doctest.h"

using namespace ltoim;

namespace {

// Hub 0 feeding three mid nodes; 3 feeds 5; {1,2,5} converge on 7 and
// {1,5} on 4; 4 feeds 6. Thresholds picked so the cascade runs
// {0} -> {1,2,3} -> {5} -> {7} and then stalls with 4 and 6 inactive.
std::pair<Graph, WeightVector> cascade_graph() {
  std::vector<WeightedEdge> edges = {
      {0, 1, 0.3}, {0, 2, 0.3}, {0, 3, 0.3}, {3, 5, 0.4}, {1, 7, 0.2},
      {2, 7, 0.2}, {5, 7, 0.2}, {1, 4, 0.2}, {5, 4, 0.2}, {4, 6, 0.3}};
  return build_graph(8, edges);
}

ThresholdVector cascade_theta() {
  ThresholdVector theta(8);
  theta << 0.7, 0.2, 0.2, 0.2, 0.9, 0.35, 0.5, 0.5;
  return theta;
}

}  // namespace

TEST_CASE("single edge activates exactly at the threshold") {
  auto [g, w] = build_graph(2, std::vector<WeightedEdge>{{0, 1, 0.5}});
  std::vector<int> seeds{0};
  ThresholdVector theta(2);
  theta << 0.0, 0.5;
  auto on = diffuse_lt(g, w, seeds, theta);
  CHECK(on.activation_time[1] == 1);  // weak inequality: 0.5 >= 0.5
  theta[1] = 0.5000001;
  auto off = diffuse_lt(g, w, seeds, theta);
  CHECK(off.activation_time[1] == -1);
  CHECK(off.final_count() == 1);
}

TEST_CASE("a zero threshold is met by an empty in-neighborhood") {
  // Node 2 has no in-edges; the activation rule compares an empty sum
  // against theta, so theta = 0 fires it.
  auto [g, w] = build_graph(3, std::vector<WeightedEdge>{{0, 1, 0.5}});
  std::vector<int> seeds{0};
  ThresholdVector theta(3);
  theta << 0.3, 0.9, 0.0;
  auto trace = diffuse_lt(g, w, seeds, theta);
  CHECK(trace.activation_time[2] == 1);
  CHECK(trace.activation_time[1] == -1);
}

TEST_CASE("eight node cascade trace") {
  auto [g, w] = cascade_graph();
  std::vector<int> seeds{0};
  auto trace = diffuse_lt(g, w, seeds, cascade_theta());

  CHECK(trace.horizon == 7);
  REQUIRE(trace.frontiers.size() == 4);
  CHECK(trace.frontiers[0] == std::vector<int>{0});
  CHECK(trace.frontiers[1] == std::vector<int>{1, 2, 3});
  CHECK(trace.frontiers[2] == std::vector<int>{5});
  CHECK(trace.frontiers[3] == std::vector<int>{7});

  std::vector<int> expected_time{0, 1, 1, 1, -1, 2, -1, 3};
  CHECK(trace.activation_time == expected_time);
  CHECK(trace.final_count() == 6);

  CHECK(trace.set_at(0) == std::vector<int>{0});
  CHECK(trace.set_at(2) == std::vector<int>{0, 1, 2, 3, 5});
  CHECK(trace.set_at(100) == std::vector<int>{0, 1, 2, 3, 5, 7});
  CHECK(trace.sets().size() == 4);

  CHECK(trace.active_at(7, 3));
  CHECK_FALSE(trace.active_at(7, 2));
  CHECK(trace.active_at(0, 0));
}

TEST_CASE("feedback windows of the eight node cascade") {
  auto [g, w] = cascade_graph();
  std::vector<int> seeds{0};
  auto trace = diffuse_lt(g, w, seeds, cascade_theta());
  auto fb = extract_feedback(trace, g);
  REQUIRE(fb.nodes.size() == 8);
  const int never = trace.horizon + 1;

  SUBCASE("seed carries no window") {
    auto& s = fb.nodes[0];
    CHECK(s.seed);
    CHECK(s.tau1 == never);
    CHECK(s.tau2 == never);
    CHECK(s.edge_sets.empty());
  }

  SUBCASE("node activated at first exposure") {
    auto& r = fb.nodes[1];
    CHECK_FALSE(r.seed);
    CHECK(r.tau1 == 0);
    CHECK(r.tau2 == 1);
    REQUIRE(r.edge_sets.size() == 1);
    CHECK(r.edge_sets[0] == std::vector<int>{0});
    auto pair = observation_for(fb, g, 1, 0);
    CHECK(pair.indicator.size() == 1);
    CHECK(pair.indicator[0] == 1.0);
    CHECK(pair.label == 1.0);
  }

  SUBCASE("node with a growing exposure set") {
    // In-neighbors of 7 in canonical order: 1, 2, 5.
    auto& r = fb.nodes[7];
    CHECK(r.tau1 == 1);
    CHECK(r.tau2 == 3);
    REQUIRE(r.edge_sets.size() == 2);
    CHECK(r.edge_sets[0] == std::vector<int>{0, 1});
    CHECK(r.edge_sets[1] == std::vector<int>{0, 1, 2});
    auto miss = observation_for(fb, g, 7, 1);
    CHECK(miss.indicator.isApprox(Eigen::Vector3d(1, 1, 0)));
    CHECK(miss.label == 0.0);
    auto hit = observation_for(fb, g, 7, 2);
    CHECK(hit.indicator.isApprox(Eigen::Vector3d(1, 1, 1)));
    CHECK(hit.label == 1.0);
    CHECK_THROWS_AS(observation_for(fb, g, 7, 3), ValidationError);
    CHECK_THROWS_AS(observation_for(fb, g, 7, 0), ValidationError);
  }

  SUBCASE("exposed node that never fires observes through the horizon") {
    // In-neighbors of 4: 1 and 5.
    auto& r = fb.nodes[4];
    CHECK_FALSE(r.activated);
    CHECK(r.tau1 == 1);
    CHECK(r.tau2 == never);
    REQUIRE(r.edge_sets.size() == 7);  // tau = 1..7
    CHECK(r.edge_sets[0] == std::vector<int>{0});
    for (int k = 1; k < 7; ++k)
      CHECK(r.edge_sets[k] == std::vector<int>{0, 1});
    CHECK(observation_for(fb, g, 4, 7).label == 0.0);
  }

  SUBCASE("never exposed node has an empty window") {
    auto& r = fb.nodes[6];
    CHECK(r.tau1 == never);
    CHECK(r.edge_sets.empty());
  }

  SUBCASE("distilled update covers exactly the observed nodes") {
    RngStream stream(7);
    auto update = distill_update(fb, g, stream);
    std::vector<int> keys;
    for (auto& [v, pair] : update) keys.push_back(v);
    CHECK(keys == std::vector<int>{1, 2, 3, 4, 5, 7});
    // Forced single-time windows.
    CHECK(update.at(1).label == 1.0);
    CHECK(update.at(5).indicator.isApprox(Eigen::VectorXd::Ones(1)));
    CHECK(update.at(5).label == 1.0);
    // Uniform draw stays inside the window.
    CHECK(update.at(4).label == 0.0);
    CHECK(update.at(4).indicator.sum() >= 1.0);

    RngStream replay(7);
    auto again = distill_update(fb, g, replay);
    for (auto& [v, pair] : update) {
      CHECK(again.at(v).indicator == pair.indicator);
      CHECK(again.at(v).label == pair.label);
    }
  }
}

TEST_CASE("cascade that needs every step of the horizon") {
  auto [g, w] = generate(
      {.family = GraphFamily::Chain, .nodes = 4, .weight = 1.0});
  std::vector<int> seeds{0};
  ThresholdVector theta = ThresholdVector::Ones(4);
  auto trace = diffuse_lt(g, w, seeds, theta);
  CHECK(trace.horizon == 3);
  CHECK(trace.activation_time == std::vector<int>{0, 1, 2, 3});
  CHECK(trace.frontiers.size() == 4);
}

TEST_CASE("threshold and seed validation") {
  auto [g, w] = build_graph(2, std::vector<WeightedEdge>{{0, 1, 0.5}});
  ThresholdVector theta(2);
  theta << 0.5, 0.5;
  CHECK_THROWS_AS(diffuse_lt(g, w, std::vector<int>{}, theta),
                  ValidationError);
  CHECK_THROWS_AS(diffuse_lt(g, w, std::vector<int>{2}, theta),
                  ValidationError);
  ThresholdVector bad(2);
  bad << 0.5, 1.5;
  CHECK_THROWS_AS(diffuse_lt(g, w, std::vector<int>{0}, bad),
                  ValidationError);
  bad << -0.1, 0.5;
  CHECK_THROWS_AS(diffuse_lt(g, w, std::vector<int>{0}, bad),
                  ValidationError);
  CHECK_THROWS_AS(diffuse_lt(g, w, std::vector<int>{0}, ThresholdVector(3)),
                  ValidationError);
}

TEST_CASE("sample thresholds are deterministic per stream") {
  auto [g, w] = generate({.family = GraphFamily::Chain, .nodes = 5});
  RngStream a(3), b(3);
  ThresholdVector ta = sample_thresholds(g, a);
  ThresholdVector tb = sample_thresholds(g, b);
  CHECK(ta == tb);
  CHECK(ta.size() == 5);
  CHECK(ta.minCoeff() >= 0.0);
  CHECK(ta.maxCoeff() < 1.0);
  ThresholdVector tc = sample_thresholds(g, a);  // stream advanced
  CHECK(ta != tc);
}

TEST_CASE("independent cascade extremes and determinism") {
  auto [g, w] = generate(
      {.family = GraphFamily::Chain, .nodes = 4, .weight = 1.0});
  std::vector<int> seeds{0};
  RngStream s1(5);
  auto full = diffuse_ic(g, w, seeds, s1);
  CHECK(full.model == DiffusionModel::IndependentCascade);
  CHECK(full.activation_time == std::vector<int>{0, 1, 2, 3});

  auto wz = WeightVector::zero(g);
  RngStream s2(5);
  auto none = diffuse_ic(g, wz, seeds, s2);
  CHECK(none.final_count() == 1);

  auto [gr, wr] = generate({.family = GraphFamily::ErdosRenyi,
                            .nodes = 8,
                            .edge_probability = 0.4,
                            .weight = 0.1,
                            .seed = 2});
  RngStream a(11), b(11);
  auto ta = diffuse_ic(gr, wr, seeds, a);
  auto tb = diffuse_ic(gr, wr, seeds, b);
  CHECK(ta.activation_time == tb.activation_time);
}
