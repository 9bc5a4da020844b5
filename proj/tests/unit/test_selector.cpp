#include <gtest/gtest.h>

#include "test_util.hpp"
#include "unialign/event_log.hpp"
#include "unialign/selector.hpp"

using namespace unialign;

TEST(Replay, HandComputedToyTrace) {
  // <a,b,e>: t1 consumes p1 and marks p2,p3; t2 moves p2 to p4; t5 lacks p5
  // (one missing token) and marks p6; p3 is left over at the end.
  const ReplayCounts c = replay_trace(testutil::load_net("toy.pnml"), Trace{"x", {"a", "b", "e"}});
  EXPECT_EQ(c.produced, 5);
  EXPECT_EQ(c.consumed, 5);
  EXPECT_EQ(c.missing, 1);
  EXPECT_EQ(c.remaining, 1);
  EXPECT_EQ(token_replay_fitness(testutil::load_net("toy.pnml"), EventLog{{Trace{"x", {"a", "b", "e"}}}, "", 0}),
            Rational(4, 5));
}

TEST(Replay, FittingTraceAndUnknownActivity) {
  const PetriNet net = testutil::load_net("toy.pnml");
  const ReplayCounts fit = replay_trace(net, Trace{"x", {"a", "c", "b", "e"}});
  EXPECT_EQ(fit.missing, 0);
  EXPECT_EQ(fit.remaining, 0);
  EXPECT_EQ(fit.produced, 6);
  EXPECT_EQ(fit.consumed, 6);
  // <z>: the unknown event counts one of each; the final token on p6 is
  // missing and the initial token on p1 remains.
  const ReplayCounts z = replay_trace(net, Trace{"x", {"z"}});
  EXPECT_EQ(z.produced, 2);
  EXPECT_EQ(z.consumed, 2);
  EXPECT_EQ(z.missing, 2);
  EXPECT_EQ(z.remaining, 2);
  EXPECT_EQ(token_replay_fitness(net, EventLog{{Trace{"x", {"z"}}}, "", 0}), 0);
}

TEST(Replay, LogFitnessSumsCounts) {
  const PetriNet net = testutil::load_net("toy.pnml");
  const EventLog log{{Trace{"1", {"a", "b", "e"}}, Trace{"2", {"a", "c", "b", "e"}}}, "", 0};
  // m = 1, c = 11, r = 1, p = 11.
  EXPECT_EQ(token_replay_fitness(net, log), Rational(10, 11));
  bool empty = false;
  EXPECT_EQ(token_replay_fitness(net, EventLog{}, &empty), 1);
  EXPECT_TRUE(empty);
}

TEST(Selection, ExhaustiveGridMatchesTheRule) {
  const SelectionThresholds th;
  for (std::size_t L = 0; L <= 200; ++L) {
    for (int k = 0; k <= 200; ++k) {
      const Rational F = ratio(k, 200);
      const bool lp = L > 20 && (1 - F) * Rational(static_cast<long>(L)) > Rational(3, 2);
      EXPECT_EQ(select_method(L, F, th), lp ? Method::LP : Method::ASTAR) << L << " " << k;
    }
  }
}

TEST(Selection, WorkedCasesAndBoundaries) {
  EXPECT_EQ(select_method(100, Rational(99, 100)), Method::ASTAR);
  EXPECT_EQ(select_method(100, ratio(98, 100)), Method::LP);
  EXPECT_EQ(select_method(20, Rational(0)), Method::ASTAR);
  EXPECT_EQ(select_method(21, Rational(0)), Method::LP);
  // (1 - F) L exactly 3/2 stays with A*.
  EXPECT_EQ(select_method(30, Rational(19, 20)), Method::ASTAR);
  SelectionThresholds th;
  th.length_threshold = 5;
  th.deviation_threshold = 0;
  EXPECT_EQ(select_method(6, Rational(99, 100), th), Method::LP);
  EXPECT_EQ(select_method(6, Rational(1), th), Method::ASTAR);
}

TEST(Hybrid, RunsTheChosenMethod) {
  const PetriNet net = testutil::load_net("toy.pnml");
  const Trace trace{"x", {"a", "b", "e"}};
  const HybridResult astar = hybrid_align(net, trace, Rational(4, 5), {}, std::nullopt, {});
  EXPECT_EQ(astar.method_chosen, Method::ASTAR);
  EXPECT_EQ(astar.outcome, HybridOutcome::Optimal);
  EXPECT_EQ(astar.alignment->total_cost, 1);
  EXPECT_EQ(astar.expected_deviations, Rational(3, 5));

  SelectionThresholds th;
  th.length_threshold = 0;
  th.deviation_threshold = 0;
  const HybridResult lp = hybrid_align(net, trace, Rational(4, 5), th, std::nullopt, {});
  EXPECT_EQ(lp.method_chosen, Method::LP);
  EXPECT_EQ(lp.outcome, HybridOutcome::Optimal);
  EXPECT_EQ(lp.alignment->method, Method::LP);
  EXPECT_EQ(lp.rg_nodes, 24u);
  EXPECT_FALSE(lp.fell_back);

  ExplorationLimits tiny;
  tiny.max_nodes = 3;
  const HybridResult fb = hybrid_align(net, trace, Rational(4, 5), th, tiny, {});
  EXPECT_TRUE(fb.fell_back);
  EXPECT_EQ(fb.outcome, HybridOutcome::Optimal);
  EXPECT_EQ(fb.alignment->method, Method::ASTAR);
  EXPECT_EQ(fb.alignment->total_cost, 1);
}
