#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "unialign/matrix.hpp"
#include "unialign/petri_net.hpp"
#include "unialign/rational.hpp"
#include "unialign/sync_product.hpp"

namespace unialign {

using Clock = std::chrono::steady_clock;

struct ExplorationLimits {
  /// No node is created deeper than this BFS layer; edges from the last
  /// layer back into known nodes are kept.
  std::size_t max_depth = std::numeric_limits<std::size_t>::max();
  std::size_t max_nodes = 2'000'000;
  std::size_t max_edges = 8'000'000;
  std::uint32_t token_cap = 8;

  /// Defaults for a product: max_depth = 2 * (|T_model| + trace length) + 10.
  static ExplorationLimits defaults_for(const SynchronousProduct& sp);
  /// Throws InvalidLimits if max_nodes, max_edges or token_cap is zero.
  void validate() const;
};

struct RgEdge {
  std::size_t tail = 0;
  std::size_t transition = 0;
  std::size_t head = 0;
  Rational cost;
};

enum class TruncationReason { None, Depth, TokenCap, Nodes, Edges, Deadline };

std::string_view to_string(TruncationReason reason);

struct ExplorationStats {
  std::size_t nodes_expanded = 0;
  std::size_t edges_pruned_self_loops = 0;
  std::size_t cap_prunes = 0;
  std::size_t depth_reached = 0;
  bool truncated = false;
  /// First limit that cut the exploration short.
  TruncationReason reason = TruncationReason::None;
};

struct ReachabilityGraph {
  std::vector<Marking> nodes;
  std::vector<RgEdge> edges;
  std::size_t initial_index = 0;
  std::optional<std::size_t> final_index;
  ExplorationStats stats;

  std::optional<std::size_t> find(const Marking& m) const;
};

/// Breadth-first construction from the product's initial marking. Successors
/// of a node are generated in product transition order; self-loops are
/// dropped. A node limit or edge limit stops the whole exploration, leaving
/// the graph built so far. Throws InvalidLimits if the initial marking
/// exceeds the token cap.
ReachabilityGraph build_reachability_graph(const SynchronousProduct& sp, const ExplorationLimits& limits,
                                           std::optional<Clock::time_point> deadline = std::nullopt);

struct IncidenceEntry {
  std::size_t row;
  std::size_t col;
  int value;

  bool operator==(const IncidenceEntry&) const = default;
};

/// Sparse node-arc incidence matrix: +1 at the tail row of an edge, -1 at
/// its head row. Entries are sorted by column, then row.
struct NodeArcIncidence {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<IncidenceEntry> entries;

  IntMatrix dense() const;
};

NodeArcIncidence node_arc_incidence(const ReachabilityGraph& rg);

/// True iff every column holds exactly one +1, one -1 and nothing else.
bool check_tu_column_structure(const NodeArcIncidence& b);

/// One line per edge: "tail head transition cost".
std::string write_edge_list(const ReachabilityGraph& rg, const SynchronousProduct& sp);
/// One line per nonzero entry: "row col value", preceded by "rows cols".
std::string write_triplets(const NodeArcIncidence& b);

}  // namespace unialign
