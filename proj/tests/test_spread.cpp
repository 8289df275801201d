#include "ltoim/spread.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"

using namespace ltoim;

namespace {

std::pair<Graph, WeightVector> diamond() {
  // 0 -> {1,2} -> 3, every weight 0.5.
  std::vector<WeightedEdge> edges = {
      {0, 1, 0.5}, {0, 2, 0.5}, {1, 3, 0.5}, {2, 3, 0.5}};
  return build_graph(4, edges);
}

const std::vector<int> kSeed0{0};

}  // namespace

TEST_CASE("exact spread on hand-solved instances") {
  SUBCASE("single edge") {
    auto [g, w] = build_graph(2, std::vector<WeightedEdge>{{0, 1, 0.5}});
    CHECK(exact_spread_lt(g, w, kSeed0) == doctest::Approx(1.5));
  }
  SUBCASE("two step path") {
    auto [g, w] =
        build_graph(3, std::vector<WeightedEdge>{{0, 1, 0.5}, {1, 2, 0.4}});
    // 1 + 0.5 + 0.5 * 0.4
    CHECK(exact_spread_lt(g, w, kSeed0) == doctest::Approx(1.7));
  }
  SUBCASE("diamond marginals") {
    auto [g, w] = diamond();
    Eigen::VectorXd m = exact_activation_marginals_lt(g, w, kSeed0);
    CHECK(m[0] == doctest::Approx(1.0));
    CHECK(m[1] == doctest::Approx(0.5));
    CHECK(m[2] == doctest::Approx(0.5));
    // P(3) = 0.5 * P(1) + 0.5 * P(2)
    CHECK(m[3] == doctest::Approx(0.5));
    CHECK(exact_spread_lt(g, w, kSeed0) == doctest::Approx(2.5));
  }
  SUBCASE("in-weights summing to one leave no keep-nothing mass") {
    auto [g, w] =
        build_graph(3, std::vector<WeightedEdge>{{0, 2, 0.6}, {1, 2, 0.4}});
    CHECK(exact_spread_lt(g, w, kSeed0) == doctest::Approx(1.6));
    std::vector<int> both{0, 1};
    CHECK(exact_spread_lt(g, w, both) == doctest::Approx(3.0));
  }
  SUBCASE("extra seeds only add") {
    auto [g, w] =
        build_graph(3, std::vector<WeightedEdge>{{0, 1, 0.5}, {1, 2, 0.4}});
    std::vector<int> s{0, 2};
    CHECK(exact_spread_lt(g, w, s) == doctest::Approx(2.5));
  }
  SUBCASE("cycles stay inactive without a seed on them") {
    // 1 <-> 2 fed by 0.
    auto [g, w] = build_graph(
        3, std::vector<WeightedEdge>{{0, 1, 0.5}, {2, 1, 0.5}, {1, 2, 0.6}});
    // Keeping 2->1 together with 1->2 forms a seedless cycle, which stays
    // dead: 1 is active only by keeping 0->1 (p .5), and 2 only on top of
    // that by keeping 1->2 (p .5 * .6).
    Eigen::VectorXd m = exact_activation_marginals_lt(g, w, kSeed0);
    CHECK(m[1] == doctest::Approx(0.5));
    CHECK(m[2] == doctest::Approx(0.3));
  }
}

TEST_CASE("enumeration cap") {
  auto [g, w] =
      generate({.family = GraphFamily::Complete, .nodes = 4, .weight = 0.2});
  // Four nodes with three in-edges each: 4^4 = 256 realizations.
  CHECK_THROWS_AS(exact_spread_lt(g, w, kSeed0, 100), EnumerationTooLarge);
  CHECK_NOTHROW(exact_spread_lt(g, w, kSeed0, 256));
}

TEST_CASE("monte carlo spread") {
  SUBCASE("zero weights are exact") {
    auto [g, w] = diamond();
    auto est = mc_spread(g, WeightVector::zero(g), kSeed0, 200, RngStream(1));
    CHECK(est.mean == doctest::Approx(1.0));
    CHECK(est.std_error == doctest::Approx(0.0));
    CHECK(est.simulations == 200);
  }
  SUBCASE("single edge estimate brackets the exact value") {
    auto [g, w] = build_graph(2, std::vector<WeightedEdge>{{0, 1, 0.5}});
    auto est = mc_spread(g, w, kSeed0, 100000, RngStream(7));
    CHECK(std::abs(est.mean - 1.5) <= 3 * est.std_error);
    CHECK(est.std_error == doctest::Approx(0.5 / std::sqrt(1e5)).epsilon(0.05));
  }
  SUBCASE("threshold cascade agrees with live-edge enumeration") {
    auto [g, w] = diamond();
    auto est = mc_spread(g, w, kSeed0, 20000, RngStream(3));
    CHECK(std::abs(est.mean - 2.5) <= 3 * est.std_error);
  }
  SUBCASE("deterministic in the stream") {
    auto [g, w] = diamond();
    auto a = mc_spread(g, w, kSeed0, 500, RngStream(9));
    auto b = mc_spread(g, w, kSeed0, 500, RngStream(9));
    CHECK(a.mean == b.mean);
    CHECK_THROWS_AS(mc_spread(g, w, kSeed0, 0, RngStream(1)),
                    ValidationError);
  }
}

TEST_CASE("evaluator factories") {
  auto [g, w] = diamond();
  auto exact = make_exact_evaluator(g, w);
  CHECK(exact(std::vector<int>{}) == 0.0);
  CHECK(exact(kSeed0) == doctest::Approx(2.5));

  auto mc = make_mc_evaluator(g, w, 400, RngStream(5));
  CHECK(mc(std::vector<int>{}) == 0.0);
  double v1 = mc(kSeed0);
  CHECK(v1 == mc(kSeed0));  // same set, same substream
  std::vector<int> permuted{0};
  CHECK(mc(permuted) == v1);
  CHECK(std::abs(v1 - 2.5) < 0.3);
}

TEST_CASE("greedy selection on the two-bar graph") {
  auto [g, w] = build_graph(
      4, std::vector<WeightedEdge>{{0, 1, 0.9}, {2, 3, 0.1}});
  auto evaluate = make_exact_evaluator(g, w);

  auto one = greedy_im(g, 1, evaluate);
  CHECK(one.seeds == std::vector<int>{0});
  CHECK(one.value == doctest::Approx(1.9));
  CHECK(one.alpha == doctest::Approx(1.0 - 1.0 / std::numbers::e));
  CHECK(one.beta == 1.0);

  auto two = greedy_im(g, 2, evaluate);
  CHECK(two.seeds == std::vector<int>{0, 2});
  CHECK(two.value == doctest::Approx(3.0));

  auto all = greedy_im(g, 9, evaluate);  // budget past n fills the graph
  CHECK(all.seeds == std::vector<int>{0, 1, 2, 3});
  CHECK(all.value == doctest::Approx(4.0));

  CHECK_THROWS_AS(greedy_im(g, 0, evaluate), ValidationError);
}

TEST_CASE("lazy greedy equals plain greedy") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    auto [g, w] = generate({.family = GraphFamily::ErdosRenyi,
                            .nodes = 7,
                            .edge_probability = 0.35,
                            .weight_rule = WeightRule::UniformScaled,
                            .seed = seed});
    auto evaluate = make_exact_evaluator(g, w);
    for (int K : {1, 2, 3}) {
      auto lazy = greedy_im(g, K, evaluate, true);
      auto plain = greedy_im(g, K, evaluate, false);
      CHECK(lazy.seeds == plain.seeds);
      CHECK(lazy.value == doctest::Approx(plain.value));
    }
  }
}

TEST_CASE("greedy ties break to the lowest id") {
  auto [g, w] = generate({.family = GraphFamily::Bar, .pairs = 2,
                          .weight = 0.5});
  auto evaluate = make_exact_evaluator(g, w);
  CHECK(greedy_im(g, 1, evaluate, true).seeds == std::vector<int>{0});
  CHECK(greedy_im(g, 1, evaluate, false).seeds == std::vector<int>{0});
}

TEST_CASE("exhaustive optimum") {
  auto [g, w] = build_graph(
      4, std::vector<WeightedEdge>{{0, 1, 0.9}, {2, 3, 0.1}});
  auto best = exact_opt(g, w, 2);
  CHECK(best.seeds == std::vector<int>{0, 2});
  CHECK(best.value == doctest::Approx(3.0));
  CHECK(best.alpha == 1.0);
  CHECK(best.beta == 1.0);

  // Ties go to the lexicographically smallest set.
  auto [ge, we] = generate({.family = GraphFamily::Bar, .pairs = 2,
                            .weight = 0.5});
  CHECK(exact_opt(ge, we, 1).seeds == std::vector<int>{0});

  CHECK(exact_opt(g, w, 99).seeds == std::vector<int>{0, 1, 2, 3});
  CHECK_THROWS_AS(exact_opt(g, w, 2, 3), EnumerationTooLarge);

  // Greedy matches the optimum here and reports a weaker guarantee.
  auto evaluate = make_exact_evaluator(g, w);
  auto greedy = greedy_im(g, 2, evaluate);
  CHECK(greedy.value == doctest::Approx(best.value));
  CHECK(greedy.alpha < best.alpha);
}
