#include "unialign/reachability.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "unialign/error.hpp"

namespace unialign {

ExplorationLimits ExplorationLimits::defaults_for(const SynchronousProduct& sp) {
  ExplorationLimits limits;
  limits.max_depth = 2 * (sp.model.num_transitions() + sp.trace_length()) + 10;
  return limits;
}

void ExplorationLimits::validate() const {
  if (max_nodes == 0) throw InvalidLimits("max_nodes must be at least 1");
  if (max_edges == 0) throw InvalidLimits("max_edges must be at least 1");
  if (token_cap == 0) throw InvalidLimits("token_cap must be at least 1");
}

std::string_view to_string(TruncationReason reason) {
  switch (reason) {
    case TruncationReason::None: return "none";
    case TruncationReason::Depth: return "depth";
    case TruncationReason::TokenCap: return "token-cap";
    case TruncationReason::Nodes: return "nodes";
    case TruncationReason::Edges: return "edges";
    case TruncationReason::Deadline: return "deadline";
  }
  return "unknown";
}

std::optional<std::size_t> ReachabilityGraph::find(const Marking& m) const {
  auto it = std::find(nodes.begin(), nodes.end(), m);
  if (it == nodes.end()) return std::nullopt;
  return static_cast<std::size_t>(it - nodes.begin());
}

ReachabilityGraph build_reachability_graph(const SynchronousProduct& sp, const ExplorationLimits& limits,
                                           std::optional<Clock::time_point> deadline) {
  limits.validate();
  const PetriNet& net = sp.net;
  const std::size_t nt = net.num_transitions();
  for (std::size_t p = 0; p < net.num_places(); ++p) {
    if (net.initial_marking()[p] > limits.token_cap) {
      throw InvalidLimits("initial marking of place '" + net.places()[p] + "' exceeds the token cap");
    }
  }

  ReachabilityGraph rg;
  auto truncate = [&](TruncationReason reason) {
    if (!rg.stats.truncated) rg.stats.reason = reason;
    rg.stats.truncated = true;
  };

  std::unordered_map<Marking, std::size_t, MarkingHash> index;
  std::vector<std::size_t> depth;
  rg.nodes.push_back(net.initial_marking());
  depth.push_back(0);
  index.emplace(net.initial_marking(), 0);
  if (net.initial_marking() == net.final_marking()) rg.final_index = 0;

  std::vector<bool> self_loop(nt, true);
  for (std::size_t t = 0; t < nt; ++t) {
    std::vector<std::int64_t> delta(net.num_places(), 0);
    for (const auto& pw : net.preset(t)) delta[pw.place] -= pw.weight;
    for (const auto& pw : net.postset(t)) delta[pw.place] += pw.weight;
    self_loop[t] = std::all_of(delta.begin(), delta.end(), [](std::int64_t d) { return d == 0; });
  }

  bool stop = false;
  for (std::size_t current = 0; current < rg.nodes.size() && !stop; ++current) {
    if (deadline && Clock::now() >= *deadline) {
      truncate(TruncationReason::Deadline);
      break;
    }
    const std::size_t d = depth[current];
    const bool frontier = d >= limits.max_depth;
    if (!frontier) ++rg.stats.nodes_expanded;
    for (std::size_t t = 0; t < nt; ++t) {
      const Marking& m = rg.nodes[current];
      bool enabled = true;
      for (const auto& pw : net.preset(t)) {
        if (m[pw.place] < pw.weight) {
          enabled = false;
          break;
        }
      }
      if (!enabled) continue;
      if (self_loop[t]) {
        ++rg.stats.edges_pruned_self_loops;
        continue;
      }
      Marking next = m;
      for (const auto& pw : net.preset(t)) next[pw.place] -= pw.weight;
      bool capped = false;
      for (const auto& pw : net.postset(t)) {
        next[pw.place] += pw.weight;
        if (next[pw.place] > limits.token_cap) capped = true;
      }
      if (capped) {
        ++rg.stats.cap_prunes;
        truncate(TruncationReason::TokenCap);
        continue;
      }
      if (rg.edges.size() >= limits.max_edges) {
        truncate(TruncationReason::Edges);
        stop = true;
        break;
      }
      auto it = index.find(next);
      std::size_t head;
      if (it == index.end()) {
        if (frontier) {
          truncate(TruncationReason::Depth);
          continue;
        }
        if (rg.nodes.size() >= limits.max_nodes) {
          truncate(TruncationReason::Nodes);
          stop = true;
          break;
        }
        head = rg.nodes.size();
        if (next == net.final_marking()) rg.final_index = head;
        index.emplace(next, head);
        rg.nodes.push_back(std::move(next));
        depth.push_back(d + 1);
        rg.stats.depth_reached = std::max(rg.stats.depth_reached, d + 1);
      } else {
        head = it->second;
      }
      rg.edges.push_back({current, t, head, sp.costs[t]});
    }
  }
  return rg;
}

IntMatrix NodeArcIncidence::dense() const {
  IntMatrix m(rows, cols);
  for (const auto& e : entries) m(e.row, e.col) += e.value;
  return m;
}

NodeArcIncidence node_arc_incidence(const ReachabilityGraph& rg) {
  NodeArcIncidence b;
  b.rows = rg.nodes.size();
  b.cols = rg.edges.size();
  b.entries.reserve(2 * rg.edges.size());
  for (std::size_t e = 0; e < rg.edges.size(); ++e) {
    const RgEdge& edge = rg.edges[e];
    const IncidenceEntry tail{edge.tail, e, +1};
    const IncidenceEntry head{edge.head, e, -1};
    if (edge.tail < edge.head) {
      b.entries.push_back(tail);
      b.entries.push_back(head);
    } else {
      b.entries.push_back(head);
      b.entries.push_back(tail);
    }
  }
  return b;
}

bool check_tu_column_structure(const NodeArcIncidence& b) {
  std::vector<int> plus(b.cols, 0);
  std::vector<int> minus(b.cols, 0);
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  cells.reserve(b.entries.size());
  for (const auto& e : b.entries) {
    if (e.col >= b.cols || e.row >= b.rows) return false;
    cells.emplace_back(e.col, e.row);
    if (e.value == 1) {
      ++plus[e.col];
    } else if (e.value == -1) {
      ++minus[e.col];
    } else if (e.value != 0) {
      return false;
    }
  }
  std::sort(cells.begin(), cells.end());
  if (std::adjacent_find(cells.begin(), cells.end()) != cells.end()) return false;
  for (std::size_t c = 0; c < b.cols; ++c) {
    if (plus[c] != 1 || minus[c] != 1) return false;
  }
  return true;
}

std::string write_edge_list(const ReachabilityGraph& rg, const SynchronousProduct& sp) {
  std::ostringstream out;
  for (const RgEdge& e : rg.edges) {
    out << e.tail << ' ' << e.head << ' ' << sp.net.transitions()[e.transition] << ' ' << to_string(e.cost) << '\n';
  }
  return out.str();
}

std::string write_triplets(const NodeArcIncidence& b) {
  std::ostringstream out;
  out << b.rows << ' ' << b.cols << '\n';
  for (const auto& e : b.entries) out << e.row << ' ' << e.col << ' ' << e.value << '\n';
  return out.str();
}

}  // namespace unialign
