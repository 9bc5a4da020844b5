#include <gtest/gtest.h>

#include "oracle.hpp"
#include "test_util.hpp"
#include "unialign/astar.hpp"
#include "unialign/error.hpp"

using namespace unialign;

namespace {

const std::vector<std::pair<std::string, std::vector<std::string>>> kCases = {
    {"toy.pnml", {"a", "b", "e"}},
    {"toy.pnml", {}},
    {"toy.pnml", {"b", "a", "e", "e"}},
    {"toy_loop.pnml", {"a", "c", "b", "d", "b", "e"}},
    {"toy_loop.pnml", {"a", "b", "c", "d", "d", "c", "e"}},
    {"insurance.pnml", {"register", "decide", "register", "notify_customer", "pay_claim"}},
    {"insurance.pnml", {"register", "reject", "archive"}},
};

SearchConfig config(Heuristic h) {
  SearchConfig c;
  c.heuristic = h;
  return c;
}

}  // namespace

TEST(AStar, ToyInstance) {
  const SynchronousProduct sp =
      build_sync_product(testutil::load_net("toy.pnml"), Trace{"t", {"a", "b", "e"}});
  for (Heuristic h : {Heuristic::Zero, Heuristic::MarkingEquation}) {
    const SearchResult r = astar_align(sp, config(h));
    ASSERT_EQ(r.stats.outcome, SearchOutcome::Optimal);
    ASSERT_TRUE(r.alignment.has_value());
    EXPECT_EQ(r.alignment->total_cost, 1);
    EXPECT_EQ(r.alignment->method, Method::ASTAR);
    EXPECT_GT(r.stats.expansions, 0u);
  }
  EXPECT_EQ(marking_equation_heuristic(sp, sp.initial_marking()), Rational(1));
  EXPECT_EQ(marking_equation_heuristic(sp, sp.final_marking()), Rational(0));
}

TEST(AStar, AgreesWithTheBruteForceOracle) {
  for (const auto& [model, trace] : kCases) {
    const PetriNet net = testutil::load_net(model);
    const SynchronousProduct sp = build_sync_product(net, Trace{"t", trace});
    const Rational expected = *oracle::optimal_cost(net, trace);
    for (Heuristic h : {Heuristic::Zero, Heuristic::MarkingEquation}) {
      const SearchResult r = astar_align(sp, config(h));
      ASSERT_EQ(r.stats.outcome, SearchOutcome::Optimal) << model;
      EXPECT_EQ(r.alignment->total_cost, expected) << model;
    }
  }
}

TEST(AStar, MarkingEquationIsAdmissibleEverywhere) {
  for (const auto& [model, trace] : kCases) {
    const PetriNet net = testutil::load_net(model);
    const SynchronousProduct sp = build_sync_product(net, Trace{"t", trace});
    const auto ss = oracle::explore(net, trace, {});
    ASSERT_TRUE(ss.target.has_value());
    const auto remaining = oracle::distances(ss, *ss.target, true);
    MarkingEquationHeuristic heur(sp);
    for (std::size_t i = 0; i < ss.states.size(); ++i) {
      Marking m = Marking::zeros(sp.net.num_places());
      for (std::size_t p = 0; p < ss.states[i].tokens.size(); ++p) m[p] = ss.states[i].tokens[p];
      m[sp.model_places() + ss.states[i].pos] = 1;
      const auto h = heur.evaluate(m).value;
      if (!remaining[i]) continue;
      ASSERT_TRUE(h.has_value()) << model << " state " << i;
      EXPECT_LE(*h, *remaining[i]) << model << " state " << i;
      EXPECT_EQ(h, marking_equation_heuristic(sp, m));
    }
  }
}

TEST(AStar, WarmStartReusesParentSolutions) {
  const SynchronousProduct sp =
      build_sync_product(testutil::load_net("toy.pnml"), Trace{"t", {"a", "b", "e"}});
  MarkingEquationHeuristic heur(sp);
  const Marking m0 = sp.initial_marking();
  const auto& root = heur.evaluate(m0);
  ASSERT_TRUE(root.value.has_value());
  EXPECT_EQ(heur.lp_solves(), 1u);
  std::optional<std::size_t> fired;
  for (std::size_t t = 0; t < root.solution.size(); ++t) {
    if (root.solution[t] >= 1 && is_enabled(sp.net, m0, t)) fired = t;
  }
  ASSERT_TRUE(fired.has_value());
  const Rational parent = *root.value;
  const Marking child = fire(sp.net, m0, *fired);
  const auto& derived = heur.evaluate_successor(m0, *fired, child);
  EXPECT_EQ(heur.lp_solves(), 1u);
  EXPECT_EQ(*derived.value, parent - sp.costs[*fired]);
  EXPECT_EQ(derived.value, marking_equation_heuristic(sp, child));
}

TEST(AStar, BudgetsProduceTimeouts) {
  const SynchronousProduct sp = build_sync_product(
      testutil::load_net("insurance.pnml"), Trace{"t", {"register", "decide", "register", "notify_customer"}});
  SearchConfig c = config(Heuristic::Zero);
  c.max_expansions = 2;
  const SearchResult r = astar_align(sp, c);
  EXPECT_EQ(r.stats.outcome, SearchOutcome::Timeout);
  EXPECT_FALSE(r.alignment.has_value());
  EXPECT_LE(r.stats.expansions, 2u);
}

TEST(AStar, UnreachableFinalMarkingExhausts) {
  PetriNetBuilder b;
  b.add_place("p1", 1).add_place("p2").add_place("p3", 0, 1).add_transition("t1", Label::activity("a"));
  b.add_arc("p1", "t1").add_arc("t1", "p2");
  const SynchronousProduct sp = build_sync_product(b.build(), Trace{"t", {"a"}});
  for (Heuristic h : {Heuristic::Zero, Heuristic::MarkingEquation}) {
    const SearchResult r = astar_align(sp, config(h));
    EXPECT_EQ(r.stats.outcome, SearchOutcome::Exhausted);
    EXPECT_FALSE(r.alignment.has_value());
  }
  EXPECT_FALSE(marking_equation_heuristic(sp, sp.initial_marking()).has_value());
}

TEST(AStar, ConfigValidation) {
  SearchConfig c;
  c.timeout = std::chrono::microseconds(0);
  EXPECT_THROW(c.validate(), InvalidInput);
  c = {};
  c.max_expansions = 0;
  EXPECT_THROW(c.validate(), InvalidInput);
}
