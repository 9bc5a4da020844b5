#include <benchmark/benchmark.h>

#include "unialign/astar.hpp"
#include "unialign/flow_align.hpp"
#include "unialign/noise.hpp"
#include "unialign/pnml.hpp"
#include "unialign/process_tree.hpp"
#include "unialign/reachability.hpp"

using namespace unialign;

namespace {

const ProcessTree& bench_tree() {
  static const ProcessTree tree =
      parse_process_tree("seq(a, and(seq(b, c), xor(d, e), f), loop(g, h), xor(seq(i, j), and(k, l)), m)");
  return tree;
}

// A sampled trace with `edits` swap/replace deviations.
Trace bench_trace(std::size_t edits) {
  SeededRng rng(7);
  const Trace clean = sample_trace(bench_tree(), rng, "bench");
  EditSpec spec;
  spec.edits = edits;
  spec.allow_insert = false;
  spec.allow_delete = false;
  spec.alphabet = tree_alphabet(bench_tree());
  spec.seed = 7;
  return perturb_trace(clean, spec);
}

void BM_ReachabilityGraph(benchmark::State& state) {
  const SynchronousProduct sp = build_sync_product(tree_to_net(bench_tree()), bench_trace(state.range(0)));
  const auto limits = ExplorationLimits::defaults_for(sp);
  for (auto _ : state) benchmark::DoNotOptimize(build_reachability_graph(sp, limits));
}

void BM_FlowAlign(benchmark::State& state) {
  const SynchronousProduct sp = build_sync_product(tree_to_net(bench_tree()), bench_trace(state.range(0)));
  for (auto _ : state) {
    const ReachabilityGraph rg = build_reachability_graph(sp, ExplorationLimits::defaults_for(sp));
    const FlowSolution sol = solve_min_cost_unit_flow(assemble_flow_problem(rg));
    benchmark::DoNotOptimize(extract_alignment(rg, sp, sol));
  }
}

void BM_AStar(benchmark::State& state) {
  const SynchronousProduct sp = build_sync_product(tree_to_net(bench_tree()), bench_trace(state.range(0)));
  SearchConfig cfg;
  cfg.heuristic = state.range(1) ? Heuristic::MarkingEquation : Heuristic::Zero;
  std::size_t expansions = 0;
  for (auto _ : state) {
    const SearchResult r = astar_align(sp, cfg);
    expansions = r.stats.expansions;
    benchmark::DoNotOptimize(r);
  }
  state.counters["expansions"] = static_cast<double>(expansions);
}

void BM_ToyLp(benchmark::State& state) {
  const SynchronousProduct sp =
      build_sync_product(read_pnml_file(UNIALIGN_FIXTURE_DIR "/toy.pnml"), Trace{"t", {"a", "b", "e"}});
  for (auto _ : state) {
    const ReachabilityGraph rg = build_reachability_graph(sp, ExplorationLimits::defaults_for(sp));
    benchmark::DoNotOptimize(solve_min_cost_unit_flow(assemble_flow_problem(rg)));
  }
}

}  // namespace

BENCHMARK(BM_ReachabilityGraph)->Arg(0)->Arg(8)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FlowAlign)->Arg(0)->Arg(8)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AStar)->Args({0, 0})->Args({0, 1})->Args({8, 0})->Args({8, 1})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ToyLp)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
