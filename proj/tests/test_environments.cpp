#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "fgb/environments.hpp"
#include "fgb/errors.hpp"
#include "test_util.hpp"

using namespace fgb;

TEST_CASE("graph families declare their exact parameters") {
  auto check_declared = [](const GraphSource& src) {
    const FeedbackGraph& g = src.graph_at(0);
    const GraphStats s = src.stats_at(0);
    CHECK(s.alpha == independence_number_exact(g));
    if (g.loopless_set().empty()) {
      CHECK(s.weak_domination == 0.0);
    } else {
      CHECK(s.weak_domination == weak_domination_number_exact(g));
    }
    const double tilde =
        g.self_loop_set().empty()
            ? 0.0
            : independence_number_exact(
                  induced_subgraph(g, g.self_loop_set()));
    CHECK(s.alpha_tilde == tilde);
  };

  check_declared(*make_self_loops_only(6));
  CHECK(make_self_loops_only(6)->stats_at(0).alpha == 6.0);

  auto cliques = make_union_of_cliques({2, 3});
  CHECK(cliques->num_nodes() == 5);
  CHECK(cliques->stats_at(0).alpha == 2.0);
  CHECK(classify(cliques->graph_at(0)) == Observability::kStronglyObservable);
  check_declared(*cliques);

  auto revealing = make_revealing_action(4);
  CHECK(revealing->stats_at(0).weak_domination == 1.0);
  CHECK(classify(revealing->graph_at(0)) == Observability::kWeaklyObservable);
  check_declared(*revealing);

  check_declared(*make_loopless_complete(5));
  check_declared(*make_star_weak(7, 2));
  check_declared(*make_erdos_renyi_self_aware(8, 0.3, 99));

  CHECK_THROWS_AS(make_union_of_cliques({0, 3}), ConfigError);
  CHECK_THROWS_AS(make_star_weak(3, 5), ConfigError);
}

TEST_CASE("declared stats match brute force across random instantiations") {
  rng::Stream rng(191);
  int checked = 0;
  while (checked < 500) {
    std::shared_ptr<GraphSource> src;
    switch (rng.below(5)) {
      case 0:
        src = make_self_loops_only(1 + static_cast<int>(rng.below(12)));
        break;
      case 1: {
        std::vector<int> sizes;
        int left = 2 + static_cast<int>(rng.below(10));
        while (left > 0) {
          const int s = 1 + static_cast<int>(rng.below(left));
          sizes.push_back(s);
          left -= s;
        }
        src = make_union_of_cliques(sizes);
        break;
      }
      case 2:
        src = make_loopless_complete(2 + static_cast<int>(rng.below(10)));
        break;
      case 3:
        src = make_revealing_action(2 + static_cast<int>(rng.below(10)));
        break;
      default: {
        const int k = 2 + static_cast<int>(rng.below(10));
        src = make_star_weak(k, 1 + static_cast<int>(rng.below(k)));
        break;
      }
    }
    const FeedbackGraph& g = src->graph_at(0);
    if (g.num_nodes() > 12) continue;
    const GraphStats s = src->stats_at(0);
    CHECK(s.alpha == test::independence_number_enumeration(g));
    CHECK(s.weak_domination ==
          (g.loopless_set().empty() ? 0 : test::weak_domination_enumeration(g)));
    if (!g.self_loop_set().empty()) {
      CHECK(s.alpha_tilde == test::independence_number_enumeration(
                                 induced_subgraph(g, g.self_loop_set())));
    }
    ++checked;
  }
}

TEST_CASE("sequence sources cycle through the file") {
  const std::string path = "seq_graphs_test.txt";
  {
    std::ofstream out(path);
    out << "# two graphs\n";
    out << "K=2; 0:0; 1:1\n";
    out << "K=2; 0:1; 1:0\n";
  }
  auto src = make_sequence_source(path);
  CHECK(src->graph_at(0).has_self_loop(0));
  CHECK(!src->graph_at(1).has_self_loop(0));
  CHECK(src->graph_at(2).has_self_loop(0));  // cycles
  const HorizonStats h = src->horizon(4);
  CHECK(h.sum_alpha == 2 * 2.0 + 2 * 1.0);
  std::remove(path.c_str());
}

TEST_CASE("stochastic losses respect their means") {
  auto zeros = make_stochastic_losses({0.0, 0.0});
  auto ones = make_stochastic_losses({1.0, 1.0});
  rng::Stream rng(193);
  std::vector<int> history;
  for (int t = 0; t < 20; ++t) {
    CHECK(zeros->losses(t, history, rng) == std::vector<double>{0.0, 0.0});
    CHECK(ones->losses(t, history, rng) == std::vector<double>{1.0, 1.0});
  }
  auto halves = make_stochastic_losses({0.5, 0.5});
  double total = 0.0;
  const int n = 100000;
  for (int t = 0; t < n; ++t) total += halves->losses(t, history, rng)[0];
  CHECK(total / n > 0.49);
  CHECK(total / n < 0.51);
  CHECK_THROWS_AS(make_stochastic_losses({1.5}), ConfigError);
}

TEST_CASE("late switch flips arm zero after the switch round") {
  const int k = 3;
  rng::Stream rng(197);
  std::vector<int> history;
  auto model = make_late_switch(k, 5);
  for (int t = 0; t < 10; ++t) {
    const auto l = model->losses(t, history, rng);
    CHECK(l[0] == ((t + 1) <= 5 ? 0.0 : 1.0));
    CHECK(l[1] == 0.5);
    CHECK(l[2] == 0.5);
  }
  // switch beyond the horizon: arm 0 never flips.
  auto late = make_late_switch(k, 1000);
  for (int t = 0; t < 100; ++t) {
    CHECK(late->losses(t, history, rng)[0] == 0.0);
  }
  // switch at T/2 balances arm 0 against the half-loss arms.
  auto half = make_late_switch(k, 50);
  double arm0 = 0.0, arm1 = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto l = half->losses(t, history, rng);
    arm0 += l[0];
    arm1 += l[1];
  }
  CHECK(arm0 == 50.0);
  CHECK(arm1 == 50.0);
}

TEST_CASE("adaptive targeting follows the recent-window mode") {
  const int k = 4;
  auto model = make_adaptive_targeting(k, 3, 1);
  rng::Stream rng(199);
  std::vector<int> history;
  // Empty history: ties resolve to arm 0.
  auto l = model->losses(0, history, rng);
  CHECK(l == std::vector<double>{1.0, 0.0, 0.5, 0.5});
  history = {2, 2, 3};
  l = model->losses(3, history, rng);
  CHECK(l[2] == 1.0);
  CHECK(l[1] == 0.0);
  CHECK(l[3] == 0.5);
  // Window slides: only the last three actions count.
  history = {2, 2, 3, 3, 3};
  l = model->losses(5, history, rng);
  CHECK(l[3] == 1.0);
  // The safe arm stays at zero even when targeted.
  auto safe_model = make_adaptive_targeting(2, 3, 1);
  history = {1, 1, 1};
  l = safe_model->losses(3, history, rng);
  CHECK(l[1] == 0.0);
}

TEST_CASE("environment fixes losses before seeing the round's action") {
  auto graphs = make_self_loops_only(3);
  Environment env(graphs, make_adaptive_targeting(3, 5, 1), rng::Stream(211));
  env.begin_round();
  const std::vector<double> before = env.current_losses();
  // Observing with different candidate actions must not change the round.
  const RoundFeedback fa = env.observe(0);
  const RoundFeedback fb = env.observe(2);
  CHECK(env.current_losses() == before);
  CHECK(fa.observed[0].second == before[0]);
  CHECK(fb.observed[0].second == before[2]);
  env.end_round(2);
  // The recorded action only shapes later rounds.
  env.begin_round();
  const auto next = env.current_losses();
  CHECK(next[2] == 1.0);  // arm 2 was the window mode
  env.end_round(0);
}

TEST_CASE("feedback keys equal the observation set on random smoke rounds") {
  rng::Stream master(223);
  for (int it = 0; it < 50; ++it) {
    const int k = 2 + static_cast<int>(master.below(6));
    auto graphs = make_erdos_renyi_self_aware(k, master.next_unit(), it);
    std::vector<double> means(k, 0.5);
    Environment env(graphs, make_stochastic_losses(means),
                    rng::Stream(master.next_u64()));
    rng::Stream actions(master.next_u64());
    for (int t = 0; t < 20; ++t) {
      env.begin_round();
      const int a = static_cast<int>(actions.below(k));
      const RoundFeedback fb = env.observe(a);
      const FeedbackGraph& g = env.current_graph();
      std::size_t expected = 0;
      for (int j = 0; j < k; ++j) {
        if (g.has_edge(a, j)) ++expected;
      }
      CHECK(fb.observed.size() == expected);
      for (const auto& [node, loss] : fb.observed) {
        CHECK(g.has_edge(a, node));
        CHECK(loss == env.current_losses()[node]);
      }
      env.end_round(a);
    }
  }
}

TEST_CASE("losses outside the unit interval are rejected") {
  class BadModel : public LossModel {
   public:
    std::vector<double> losses(long long, std::span<const int>,
                               rng::Stream&) override {
      return {0.5, 1.5};
    }
  };
  Environment env(make_self_loops_only(2), std::make_unique<BadModel>(),
                  rng::Stream(227));
  CHECK_THROWS_AS(env.begin_round(), ProtocolError);
}
