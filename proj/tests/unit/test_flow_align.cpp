#include <gtest/gtest.h>

#include "oracle.hpp"
#include "test_util.hpp"
#include "unialign/error.hpp"
#include "unialign/flow_align.hpp"
#include "unialign/simplex.hpp"

using namespace unialign;

namespace {

struct Solved {
  SynchronousProduct sp;
  ReachabilityGraph rg;
  FlowSolution sol;
};

Solved solve(const std::string& model, std::vector<std::string> trace, CostConfig cost = {}) {
  Solved s{build_sync_product(testutil::load_net(model), Trace{"t", std::move(trace)}, cost), {}, {}};
  s.rg = build_reachability_graph(s.sp, ExplorationLimits::defaults_for(s.sp));
  s.sol = solve_min_cost_unit_flow(assemble_flow_problem(s.rg));
  return s;
}

std::vector<std::string> ids(const Alignment& a) {
  std::vector<std::string> out;
  for (const auto& m : a.moves) out.push_back(m.id);
  return out;
}

// The flow problem written out densely and handed to the generic simplex.
Rational simplex_objective(const FlowProblem& fp) {
  const IntMatrix b = fp.incidence.dense();
  std::vector<std::vector<Rational>> a(b.rows(), std::vector<Rational>(b.cols()));
  for (std::size_t r = 0; r < b.rows(); ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) a[r][c] = b(r, c);
  }
  std::vector<Rational> rhs(fp.balance.begin(), fp.balance.end());
  const LpResult r = solve_lp(a, rhs, fp.costs);
  EXPECT_EQ(r.status, LpStatus::Optimal);
  return r.objective;
}

}  // namespace

TEST(FlowAlign, ToyInstanceHasCostOneAndAnOptimalAlignment) {
  const Solved s = solve("toy.pnml", {"a", "b", "e"});
  ASSERT_EQ(s.sol.status, FlowStatus::Optimal);
  EXPECT_EQ(s.sol.objective, 1);
  EXPECT_TRUE(verify_integrality(s.sol));
  const Alignment a = extract_alignment(s.rg, s.sp, s.sol);
  const std::vector<std::vector<std::string>> optimal = {
      {"(t1,t1')", "(t2,t2')", "(t3,>>)", "(t5,t3')"},
      {"(t1,t1')", "(t3,>>)", "(t2,t2')", "(t5,t3')"},
  };
  EXPECT_TRUE(ids(a) == optimal[0] || ids(a) == optimal[1]);
  EXPECT_EQ(a.total_cost, 1);
  EXPECT_EQ(a.num_sync, 3u);
  EXPECT_EQ(a.num_model, 1u);
  EXPECT_EQ(a.method, Method::LP);
}

TEST(FlowAlign, SolutionIsAUnitPath) {
  const Solved s = solve("toy_loop.pnml", {"a", "c", "b", "d", "b", "e"});
  ASSERT_EQ(s.sol.status, FlowStatus::Optimal);
  std::vector<int> net(s.rg.nodes.size(), 0);
  for (std::size_t e = 0; e < s.rg.edges.size(); ++e) {
    EXPECT_TRUE(s.sol.x[e] == 0 || s.sol.x[e] == 1);
    if (s.sol.x[e] == 1) {
      ++net[s.rg.edges[e].tail];
      --net[s.rg.edges[e].head];
    }
  }
  for (std::size_t n = 0; n < net.size(); ++n) {
    const int expect = n == s.rg.initial_index ? 1 : (n == *s.rg.final_index ? -1 : 0);
    EXPECT_EQ(net[n], expect);
  }
}

TEST(FlowAlign, MatchesTheSimplexAndTheBruteForceOracle) {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
      {"toy.pnml", {"a", "b", "e"}},
      {"toy.pnml", {}},
      {"toy.pnml", {"e", "d", "a"}},
      {"toy_loop.pnml", {"a", "c", "b", "d", "b", "e"}},
      {"toy_loop.pnml", {"a", "d", "d", "e"}},
      {"insurance.pnml", {"register", "decide", "register", "notify_customer", "pay_claim"}},
  };
  for (const auto& [model, trace] : cases) {
    const Solved s = solve(model, trace);
    ASSERT_EQ(s.sol.status, FlowStatus::Optimal) << model;
    EXPECT_EQ(s.sol.objective, simplex_objective(assemble_flow_problem(s.rg))) << model;
    EXPECT_EQ(s.sol.objective, *oracle::optimal_cost(testutil::load_net(model), trace)) << model;
  }
}

TEST(FlowAlign, KnownCosts) {
  EXPECT_EQ(solve("toy.pnml", {}).sol.objective, 3);
  EXPECT_EQ(solve("toy_loop.pnml", {"a", "c", "b", "d", "b", "e"}).sol.objective, 1);
  const Solved ins =
      solve("insurance.pnml", {"register", "decide", "register", "notify_customer", "pay_claim"});
  EXPECT_EQ(ins.sol.objective, Rational(4) + 2 * Rational(1, 1000000));
  CostConfig c;
  c.tau_cost = Rational(1, 10);
  c.deviation_cost = 2;
  EXPECT_EQ(solve("insurance.pnml", {"register", "decide", "register", "notify_customer", "pay_claim"}, c)
                .sol.objective,
            Rational(8) + ratio(2, 10));
}

TEST(FlowAlign, UnreachableFinalMarking) {
  PetriNetBuilder b;
  b.add_place("p1", 1).add_place("p2").add_place("p3", 0, 1).add_transition("t1", Label::activity("a"));
  b.add_arc("p1", "t1").add_arc("t1", "p2");
  const SynchronousProduct sp = build_sync_product(b.build(), Trace{"t", {"a"}});
  const ReachabilityGraph rg = build_reachability_graph(sp, ExplorationLimits::defaults_for(sp));
  try {
    assemble_flow_problem(rg);
    FAIL() << "expected Infeasible";
  } catch (const Infeasible& e) {
    EXPECT_FALSE(e.truncated());
  }
}

TEST(FlowAlign, TruncatedGraphIsFlagged) {
  const SynchronousProduct sp =
      build_sync_product(testutil::load_net("toy.pnml"), Trace{"t", {"a", "b", "e"}});
  ExplorationLimits lim = ExplorationLimits::defaults_for(sp);
  lim.max_nodes = 5;
  const ReachabilityGraph rg = build_reachability_graph(sp, lim);
  try {
    assemble_flow_problem(rg);
    FAIL() << "expected Infeasible";
  } catch (const Infeasible& e) {
    EXPECT_TRUE(e.truncated());
  }
  lim.max_nodes = 23;
  lim.max_depth = 100;
  const ReachabilityGraph partial = build_reachability_graph(sp, lim);
  if (partial.final_index) {
    EXPECT_EQ(solve_min_cost_unit_flow(assemble_flow_problem(partial)).status, FlowStatus::TruncatedGraph);
  }
}

TEST(FlowAlign, IntegrityChecks) {
  FlowSolution sol;
  sol.x = {0, 1, Rational(1, 2)};
  EXPECT_FALSE(verify_integrality(sol));
  EXPECT_TRUE(verify_integrality(sol, Rational(1, 2)));
  sol.x = {0, 1, 1};
  EXPECT_TRUE(verify_integrality(sol));
}

TEST(FlowAlign, MakeAlignmentCountsMoves) {
  const SynchronousProduct sp =
      build_sync_product(testutil::load_net("insurance.pnml"), Trace{"t", {"register", "decide"}});
  ASSERT_EQ(sp.moves[6].kind, MoveKind::ModelTau);
  ASSERT_EQ(sp.moves[12].kind, MoveKind::Log);
  const Alignment a = make_alignment(sp, {0, 6, 12}, Method::ASTAR);
  EXPECT_EQ(a.num_sync, 1u);
  EXPECT_EQ(a.num_tau, 1u);
  EXPECT_EQ(a.num_log, 1u);
  EXPECT_EQ(a.total_cost, Rational(1) + Rational(1, 1000000));
}
