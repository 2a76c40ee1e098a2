#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fgb/errors.hpp"
#include "fgb/graph.hpp"
#include "test_util.hpp"

using namespace fgb;

namespace {

FeedbackGraph self_aware(int k) {
  std::vector<std::vector<int>> in(k);
  for (int i = 0; i < k; ++i) in[i] = {i};
  return FeedbackGraph(k, std::move(in));
}

FeedbackGraph loopless_complete(int k) {
  std::vector<std::vector<int>> in(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (j != i) in[i].push_back(j);
    }
  }
  return FeedbackGraph(k, std::move(in));
}

}  // namespace

TEST_CASE("construction validates and caches structure") {
  FeedbackGraph g(3, {{0, 1}, {1}, {0, 2}});
  CHECK(g.num_nodes() == 3);
  CHECK(g.has_self_loop(0));
  CHECK(g.has_self_loop(1));
  CHECK(g.has_self_loop(2));
  CHECK(g.has_edge(1, 0));
  CHECK(!g.has_edge(0, 1));
  CHECK(g.out_neighbors(0)[0] == 0);
  CHECK(g.out_neighbors(0)[1] == 2);
  CHECK_THROWS_AS(FeedbackGraph(2, {{0}, {2}}), std::invalid_argument);
  CHECK_THROWS_AS(FeedbackGraph(2, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(FeedbackGraph(0, {}), std::invalid_argument);
}

TEST_CASE("classify follows the observability trichotomy") {
  CHECK(classify(self_aware(3)) == Observability::kStronglyObservable);
  CHECK(classify(loopless_complete(3)) == Observability::kStronglyObservable);
  // Node 0 is observable but neither strongly-observable condition holds.
  FeedbackGraph weak(3, {{1}, {1}, {2}});
  CHECK(classify(weak) == Observability::kWeaklyObservable);
  FeedbackGraph unobs(2, {{}, {1}});
  CHECK(classify(unobs) == Observability::kUnobservable);
}

TEST_CASE("classify is strong whenever every node has a self-loop") {
  rng::Stream rng(7);
  for (int it = 0; it < 200; ++it) {
    const int k = 1 + static_cast<int>(rng.below(8));
    const auto g = test::random_self_aware_graph(k, rng.next_unit(), rng);
    CHECK(classify(g) == Observability::kStronglyObservable);
  }
}

TEST_CASE("self_loop_set reads loop membership") {
  CHECK(self_loop_set(self_aware(4)) == std::vector<int>{0, 1, 2, 3});
  CHECK(self_loop_set(loopless_complete(3)).empty());
  FeedbackGraph mixed(4, {{0, 1}, {0}, {1, 2}, {2}});
  CHECK(self_loop_set(mixed) == std::vector<int>{0, 2});
}

TEST_CASE("observation_probability sums the in-neighborhood") {
  const auto dist = ProbabilityVector::from_values({0.3, 0.3, 0.4});
  FeedbackGraph loops = self_aware(3);
  CHECK(observation_probability(loops, dist, 0) == doctest::Approx(0.3));
  FeedbackGraph complete = loopless_complete(3);
  CHECK(observation_probability(complete, dist, 0) == doctest::Approx(0.7));
  FeedbackGraph g(3, {{0}, {1}, {0, 1}});
  const auto d2 = ProbabilityVector::from_values({0.2, 0.5, 0.3});
  CHECK(observation_probability(g, d2, 2) == doctest::Approx(0.7));
  CHECK_THROWS_AS(observation_probability(g, d2, 3), std::out_of_range);
  // Bounded in [0, 1] for arbitrary graphs and simplex points.
  rng::Stream rng(3);
  for (int it = 0; it < 200; ++it) {
    const int k = 1 + static_cast<int>(rng.below(8));
    const auto rg = test::random_graph(k, 0.4, 0.5, rng);
    const auto rd = test::random_positive_dist(k, rng);
    for (int i = 0; i < k; ++i) {
      const double w = observation_probability(rg, rd, i);
      CHECK(w >= 0.0);
      CHECK(w <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("ix_quantity evaluates the stability sum") {
  const auto uniform2 = ProbabilityVector::uniform(2);
  CHECK(ix_quantity(self_aware(2), uniform2, 0.5) == doctest::Approx(1.0));
  CHECK(ix_quantity(loopless_complete(3), ProbabilityVector::uniform(3), 0.3) ==
        doctest::Approx(0.0));  // empty S
  CHECK(ix_quantity(self_aware(4), ProbabilityVector::uniform(4), 0.0) ==
        doctest::Approx(4.0));
}

TEST_CASE("independence number matches subset enumeration") {
  CHECK(independence_number_exact(self_aware(4)) == 4);
  // Complete graph with self-loops.
  {
    std::vector<std::vector<int>> in(5);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) in[i].push_back(j);
    }
    CHECK(independence_number_exact(FeedbackGraph(5, std::move(in))) == 1);
  }
  // Disjoint union of two self-aware 2-cliques.
  {
    FeedbackGraph g(4, {{0, 1}, {0, 1}, {2, 3}, {2, 3}});
    CHECK(test::independence_number_enumeration(g) == 2);
    CHECK(independence_number_exact(g) == 2);
  }
  rng::Stream rng(11);
  for (int it = 0; it < 300; ++it) {
    const int k = 1 + static_cast<int>(rng.below(10));
    const auto g = test::random_graph(k, 0.15 + 0.6 * rng.next_unit(),
                                      rng.next_unit(), rng);
    CHECK(independence_number_exact(g) ==
          test::independence_number_enumeration(g));
  }
  CHECK_THROWS_AS(independence_number_exact(self_aware(25)),
                  std::invalid_argument);
}

TEST_CASE("independence number is invariant under relabeling") {
  rng::Stream rng(13);
  for (int it = 0; it < 100; ++it) {
    const int k = 2 + static_cast<int>(rng.below(8));
    const auto g = test::random_graph(k, 0.4, 0.5, rng);
    // Relabel by a rotation.
    const int shift = 1 + static_cast<int>(rng.below(k - 1 > 0 ? k - 1 : 1));
    std::vector<std::vector<int>> in(k);
    for (int i = 0; i < k; ++i) {
      for (int j : g.in_neighbors(i)) {
        in[(i + shift) % k].push_back((j + shift) % k);
      }
    }
    FeedbackGraph relabeled(k, std::move(in));
    CHECK(independence_number_exact(g) == independence_number_exact(relabeled));
  }
}

TEST_CASE("greedy weak dominating set") {
  CHECK(greedy_weak_dominating_set(self_aware(5)).empty());
  // Star: hub 0 with a self-loop observes four loopless leaves.
  FeedbackGraph star(5, {{0}, {0}, {0}, {0}, {0}});
  CHECK(test::weak_domination_enumeration(star) == 1);
  CHECK(greedy_weak_dominating_set(star) == std::vector<int>{0});
  CHECK(weak_domination_number_exact(star) == 1);
  // Two hubs each covering a disjoint half of six loopless nodes.
  FeedbackGraph hubs(8, {{0}, {1}, {0}, {0}, {0}, {1}, {1}, {1}});
  CHECK(test::weak_domination_enumeration(hubs) == 2);
  CHECK(greedy_weak_dominating_set(hubs) == std::vector<int>{0, 1});
  CHECK(weak_domination_number_exact(hubs) == 2);
  // Unobservable graphs are rejected.
  FeedbackGraph unobs(2, {{}, {1}});
  CHECK_THROWS_AS(greedy_weak_dominating_set(unobs), ProtocolError);
  CHECK_THROWS_AS(weak_domination_number_exact(unobs), ProtocolError);
}

TEST_CASE("greedy output is valid and within the ln-K factor") {
  rng::Stream rng(17);
  for (int it = 0; it < 400; ++it) {
    const int k = 2 + static_cast<int>(rng.below(11));
    const auto g = test::random_observable_graph(
        k, 0.1 + 0.5 * rng.next_unit(), 0.6 * rng.next_unit(), rng);
    const auto greedy = greedy_weak_dominating_set(g);
    CHECK(is_weak_dominating_set(g, greedy));
    const int exact = weak_domination_number_exact(g);
    CHECK(exact == test::weak_domination_enumeration(g));
    CHECK(static_cast<double>(greedy.size()) <=
          exact * (1.0 + std::log(static_cast<double>(k))) + 1e-9);
  }
}

TEST_CASE("stability quantity obeys the independence-number bound on self-aware graphs") {
  // The bound needs positive weights on every node, which holds for the
  // self-loop-induced subgraph use in the learners; here all nodes carry
  // self-loops and positive mass.
  rng::Stream rng(19);
  int checked = 0;
  for (int it = 0; it < 1000; ++it) {
    const int k = 2 + static_cast<int>(rng.below(11));
    const auto g = test::random_self_aware_graph(k, 0.5 * rng.next_unit(), rng);
    const auto dist = test::random_positive_dist(k, rng);
    const double gamma = 0.01 + 0.49 * rng.next_unit();  // (0, 1/2]
    const double q = ix_quantity(g, dist, gamma);
    const double alpha = independence_number_exact(g);
    const double bound =
        2.0 * alpha *
            std::log(1.0 + (std::ceil(k * k / gamma) + k) / alpha) +
        2.0;
    CHECK(q <= bound);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("graph text round-trips") {
  const std::string text = "K=3; 0:0,1; 1:1; 2:0,2";
  const FeedbackGraph g = parse_graph(text);
  CHECK(g.num_nodes() == 3);
  CHECK(g.has_edge(1, 0));
  CHECK(format_graph(g) == text);
  CHECK(format_graph(parse_graph(" K = 3 ;0: 0 ,1;1:1; 2:0,2")) == text);
  // Empty neighbor lists are written "i:".
  FeedbackGraph unobs(2, {{}, {1}});
  CHECK(format_graph(unobs) == "K=2; 0:; 1:1");
  CHECK(classify(parse_graph(format_graph(unobs))) ==
        Observability::kUnobservable);
  CHECK_THROWS_AS(parse_graph("K=2; 0:0"), ConfigError);
  CHECK_THROWS_AS(parse_graph("0:0; 1:1"), ConfigError);
  CHECK_THROWS_AS(parse_graph("K=2; 0:0; 1:5"), ConfigError);

  std::istringstream seq("# comment\nK=2; 0:0; 1:1\n\nK=2; 0:1; 1:0\n");
  const auto graphs = read_graph_sequence(seq);
  REQUIRE(graphs.size() == 2);
  CHECK(classify(graphs[0]) == Observability::kStronglyObservable);
  CHECK(classify(graphs[1]) == Observability::kStronglyObservable);
}

TEST_CASE("induced subgraph keeps edges within the node set") {
  FeedbackGraph g(4, {{0, 1}, {0}, {1, 2, 3}, {3}});
  const std::vector<int> nodes = {0, 2, 3};
  const FeedbackGraph sub = induced_subgraph(g, nodes);
  CHECK(sub.num_nodes() == 3);
  CHECK(sub.has_self_loop(0));
  CHECK(sub.has_edge(1, 1));  // old 2->2
  CHECK(sub.has_edge(2, 1));  // old 3->2
  CHECK(!sub.has_edge(0, 1));
}
