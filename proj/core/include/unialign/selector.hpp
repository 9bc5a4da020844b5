#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "unialign/astar.hpp"
#include "unialign/event_log.hpp"
#include "unialign/flow_align.hpp"
#include "unialign/rational.hpp"
#include "unialign/reachability.hpp"
#include "unialign/sync_product.hpp"

namespace unialign {

/// Token counts gathered while replaying traces.
struct ReplayCounts {
  Rational missing = 0;
  Rational consumed = 0;
  Rational remaining = 0;
  Rational produced = 0;
};

/// Replays one trace: for each event the first transition (in net order)
/// carrying its label that is enabled fires; if none is enabled, the first
/// one carrying the label fires after the missing tokens are added. Silent
/// transitions are never fired. An event whose label no transition carries
/// counts one missing, one consumed, one remaining and one produced token.
/// The initial marking counts as produced and the final marking as consumed.
ReplayCounts replay_trace(const PetriNet& net, const Trace& trace);

/// Fitness 1/2 (1 - m/c) + 1/2 (1 - r/p) over the summed counts of the log,
/// clamped to [0, 1]. An empty log has fitness 1 and sets *empty_log.
Rational token_replay_fitness(const PetriNet& net, const EventLog& log, bool* empty_log = nullptr);

struct SelectionThresholds {
  std::size_t length_threshold = 20;
  Rational deviation_threshold{3, 2};
};

/// LP iff L > length_threshold and (1 - F) L > deviation_threshold.
Method select_method(std::size_t length, const Rational& fitness, const SelectionThresholds& th = {});

struct PhaseTimings {
  std::chrono::microseconds product_build{0};
  std::chrono::microseconds rg_build{0};
  std::chrono::microseconds lp_solve{0};
  std::chrono::microseconds astar_search{0};
};

enum class HybridOutcome { Optimal, Timeout, Infeasible };

std::string_view to_string(HybridOutcome outcome);

struct HybridResult {
  std::optional<Alignment> alignment;
  Method method_chosen = Method::ASTAR;
  std::size_t trace_length = 0;
  Rational fitness;
  Rational expected_deviations;
  PhaseTimings timings;
  /// LP was chosen but the graph was truncated, so A* ran instead.
  bool fell_back = false;
  HybridOutcome outcome = HybridOutcome::Timeout;
  std::size_t rg_nodes = 0;
  std::size_t rg_edges = 0;
  SearchStats search;
};

/// Runs the method chosen by select_method on one trace.
HybridResult hybrid_align(const PetriNet& net, const Trace& trace, const Rational& fitness,
                          const SelectionThresholds& th, const std::optional<ExplorationLimits>& limits,
                          const SearchConfig& search_cfg, const CostConfig& cost = {});

}  // namespace unialign
