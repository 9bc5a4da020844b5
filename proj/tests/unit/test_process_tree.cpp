#include <gtest/gtest.h>

#include "oracle.hpp"
#include "unialign/error.hpp"
#include "unialign/process_tree.hpp"
#include "unialign/reachability.hpp"

using namespace unialign;

TEST(ProcessTree, ParsesAndPrints) {
  const ProcessTree t = parse_process_tree(" seq(a, and( b ,c), loop(d, x), xor(e, f))");
  EXPECT_EQ(to_string(t), "seq(a, and(b, c), loop(d, x), xor(e, f))");
  EXPECT_EQ(tree_alphabet(t), (std::vector<std::string>{"a", "b", "c", "d", "x", "e", "f"}));
  EXPECT_EQ(to_string(parse_process_tree("solo")), "solo");
}

TEST(ProcessTree, RejectsBadSpecs) {
  for (const char* bad : {"", "seq(", "seq()", "seq(a,)", "loop(a,b,c)", "nope(a)", "seq(a) b", "seq(a b)"}) {
    EXPECT_THROW(parse_process_tree(bad), InvalidSpec) << bad;
  }
}

TEST(ProcessTree, NetShapes) {
  const PetriNet seq = tree_to_net(parse_process_tree("seq(a, b, c)"));
  EXPECT_EQ(seq.num_places(), 4u);
  EXPECT_EQ(seq.num_transitions(), 3u);
  const PetriNet par = tree_to_net(parse_process_tree("and(a, b)"));
  EXPECT_EQ(par.num_transitions(), 4u);
  std::size_t tau = 0;
  for (const auto& l : par.labels()) tau += l.is_tau();
  EXPECT_EQ(tau, 2u);
  EXPECT_TRUE(validate_workflow_net(tree_to_net(parse_process_tree("seq(a, and(b, c), loop(d), e)"))).empty());
}

TEST(ProcessTree, SampledTracesFitTheNet) {
  SeededRng rng(3);
  for (int i = 0; i < 20; ++i) {
    const ProcessTree tree = random_tree(rng, 8);
    const PetriNet net = tree_to_net(tree);
    for (int k = 0; k < 5; ++k) {
      const Trace trace = sample_trace(tree, rng, "c");
      const auto cost = oracle::optimal_cost(net, trace.activities);
      ASSERT_TRUE(cost.has_value()) << to_string(tree);
      // Only silent moves are needed.
      EXPECT_LT(*cost, 1) << to_string(tree);
    }
  }
}

TEST(ProcessTree, LoopNetHasAFiniteGraph) {
  const PetriNet net = tree_to_net(parse_process_tree("seq(a, loop(b, c), d)"));
  const SynchronousProduct sp = build_sync_product(net, Trace{"t", {"a", "b", "c", "b", "d"}});
  const ReachabilityGraph rg = build_reachability_graph(sp, ExplorationLimits::defaults_for(sp));
  EXPECT_FALSE(rg.stats.truncated);
  EXPECT_TRUE(rg.final_index.has_value());
}

TEST(ProcessTree, GenerationIsDeterministic) {
  SeededRng a(11);
  SeededRng b(11);
  const ProcessTree ta = random_tree(a, 15);
  const ProcessTree tb = random_tree(b, 15);
  EXPECT_EQ(to_string(ta), to_string(tb));
  EXPECT_EQ(sample_trace(ta, a, "x"), sample_trace(tb, b, "x"));
  EXPECT_LE(tree_alphabet(ta).size(), 15u);
  SeededRng r(1);
  EXPECT_THROW(random_tree(r, 1), InvalidSpec);
}
