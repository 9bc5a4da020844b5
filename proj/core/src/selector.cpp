#include "unialign/selector.hpp"

#include "unialign/error.hpp"

namespace unialign {

namespace {

std::chrono::microseconds since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
}

}  // namespace

ReplayCounts replay_trace(const PetriNet& net, const Trace& trace) {
  ReplayCounts counts;
  std::vector<std::int64_t> m(net.num_places());
  for (std::size_t p = 0; p < net.num_places(); ++p) {
    m[p] = net.initial_marking()[p];
    counts.produced += net.initial_marking()[p];
  }
  for (const std::string& activity : trace.activities) {
    std::optional<std::size_t> first_match;
    std::optional<std::size_t> enabled_match;
    for (std::size_t t = 0; t < net.num_transitions(); ++t) {
      if (net.label(t).is_tau() || net.label(t).name() != activity) continue;
      if (!first_match) first_match = t;
      bool enabled = true;
      for (const auto& pw : net.preset(t)) {
        if (m[pw.place] < pw.weight) {
          enabled = false;
          break;
        }
      }
      if (enabled) {
        enabled_match = t;
        break;
      }
    }
    if (!first_match) {
      counts.missing += 1;
      counts.consumed += 1;
      counts.remaining += 1;
      counts.produced += 1;
      continue;
    }
    const std::size_t t = enabled_match ? *enabled_match : *first_match;
    for (const auto& pw : net.preset(t)) {
      if (m[pw.place] < pw.weight) {
        counts.missing += pw.weight - m[pw.place];
        m[pw.place] = pw.weight;
      }
      m[pw.place] -= pw.weight;
      counts.consumed += pw.weight;
    }
    for (const auto& pw : net.postset(t)) {
      m[pw.place] += pw.weight;
      counts.produced += pw.weight;
    }
  }
  for (std::size_t p = 0; p < net.num_places(); ++p) {
    const std::int64_t f = net.final_marking()[p];
    if (m[p] < f) {
      counts.missing += f - m[p];
      m[p] = f;
    }
    counts.consumed += f;
    counts.remaining += m[p] - f;
  }
  return counts;
}

Rational token_replay_fitness(const PetriNet& net, const EventLog& log, bool* empty_log) {
  if (empty_log) *empty_log = log.traces.empty();
  if (log.traces.empty()) return Rational(1);
  ReplayCounts total;
  for (const Trace& trace : log.traces) {
    const ReplayCounts c = replay_trace(net, trace);
    total.missing += c.missing;
    total.consumed += c.consumed;
    total.remaining += c.remaining;
    total.produced += c.produced;
  }
  Rational fitness = 0;
  const Rational half(1, 2);
  fitness += sgn(total.consumed) == 0 ? half : Rational(half * (1 - total.missing / total.consumed));
  fitness += sgn(total.produced) == 0 ? half : Rational(half * (1 - total.remaining / total.produced));
  if (fitness < 0) fitness = 0;
  if (fitness > 1) fitness = 1;
  return fitness;
}

Method select_method(std::size_t length, const Rational& fitness, const SelectionThresholds& th) {
  const Rational expected = (1 - fitness) * Rational(static_cast<unsigned long>(length));
  return (length > th.length_threshold && expected > th.deviation_threshold) ? Method::LP : Method::ASTAR;
}

std::string_view to_string(HybridOutcome outcome) {
  switch (outcome) {
    case HybridOutcome::Optimal: return "OPTIMAL";
    case HybridOutcome::Timeout: return "TIMEOUT";
    case HybridOutcome::Infeasible: return "INFEASIBLE";
  }
  return "UNKNOWN";
}

HybridResult hybrid_align(const PetriNet& net, const Trace& trace, const Rational& fitness,
                          const SelectionThresholds& th, const std::optional<ExplorationLimits>& limits,
                          const SearchConfig& search_cfg, const CostConfig& cost) {
  search_cfg.validate();
  const auto start = Clock::now();
  const auto deadline = start + search_cfg.timeout;

  HybridResult r;
  r.trace_length = trace.activities.size();
  r.fitness = fitness;
  r.expected_deviations = (1 - fitness) * Rational(static_cast<unsigned long>(r.trace_length));
  r.method_chosen = select_method(r.trace_length, fitness, th);

  auto t0 = Clock::now();
  const SynchronousProduct sp = build_sync_product(net, trace, cost);
  r.timings.product_build = since(t0);

  auto run_astar = [&]() {
    SearchConfig cfg = search_cfg;
    const auto left = std::chrono::duration_cast<std::chrono::microseconds>(deadline - Clock::now());
    if (left.count() <= 0) {
      r.outcome = HybridOutcome::Timeout;
      return;
    }
    cfg.timeout = left;
    auto t = Clock::now();
    SearchResult sr = astar_align(sp, cfg);
    r.timings.astar_search = since(t);
    r.search = sr.stats;
    r.alignment = std::move(sr.alignment);
    switch (sr.stats.outcome) {
      case SearchOutcome::Optimal: r.outcome = HybridOutcome::Optimal; break;
      case SearchOutcome::Timeout: r.outcome = HybridOutcome::Timeout; break;
      case SearchOutcome::Exhausted:
        r.outcome = sr.stats.cap_prunes > 0 ? HybridOutcome::Timeout : HybridOutcome::Infeasible;
        break;
    }
  };

  if (r.method_chosen == Method::ASTAR) {
    run_astar();
    return r;
  }

  const ExplorationLimits lim = limits ? *limits : ExplorationLimits::defaults_for(sp);
  t0 = Clock::now();
  const ReachabilityGraph rg = build_reachability_graph(sp, lim, deadline);
  r.timings.rg_build = since(t0);
  r.rg_nodes = rg.nodes.size();
  r.rg_edges = rg.edges.size();
  if (rg.stats.truncated) {
    r.fell_back = true;
    run_astar();
    return r;
  }
  if (!rg.final_index) {
    r.outcome = HybridOutcome::Infeasible;
    return r;
  }
  t0 = Clock::now();
  const FlowSolution sol = solve_min_cost_unit_flow(assemble_flow_problem(rg));
  r.timings.lp_solve = since(t0);
  if (sol.status != FlowStatus::Optimal) {
    r.outcome = HybridOutcome::Infeasible;
    return r;
  }
  r.alignment = extract_alignment(rg, sp, sol);
  r.outcome = HybridOutcome::Optimal;
  return r;
}

}  // namespace unialign
