#include "unialign/flow_align.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "unialign/error.hpp"

namespace unialign {

std::string_view to_string(FlowStatus status) {
  switch (status) {
    case FlowStatus::Optimal: return "OPTIMAL";
    case FlowStatus::Infeasible: return "INFEASIBLE";
    case FlowStatus::TruncatedGraph: return "TRUNCATED_GRAPH";
  }
  return "UNKNOWN";
}

std::string_view to_string(Method method) { return method == Method::LP ? "LP" : "ASTAR"; }

Alignment make_alignment(const SynchronousProduct& sp, const std::vector<std::size_t>& transitions, Method method) {
  Alignment a;
  a.method = method;
  a.total_cost = 0;
  a.moves.reserve(transitions.size());
  for (std::size_t t : transitions) {
    const SyncMove& move = sp.moves.at(t);
    switch (move.kind) {
      case MoveKind::Sync: ++a.num_sync; break;
      case MoveKind::Model: ++a.num_model; break;
      case MoveKind::ModelTau: ++a.num_tau; break;
      case MoveKind::Log: ++a.num_log; break;
    }
    a.total_cost += move.cost;
    a.moves.push_back(move);
  }
  return a;
}

FlowProblem assemble_flow_problem(const ReachabilityGraph& rg) {
  if (!rg.final_index) {
    if (rg.stats.truncated) {
      throw Infeasible("final marking not reached: the reachability graph was truncated (" +
                           std::string(to_string(rg.stats.reason)) + " limit)",
                       true);
    }
    throw Infeasible("final marking is unreachable from the initial marking", false);
  }
  FlowProblem fp;
  fp.incidence = node_arc_incidence(rg);
  fp.costs.reserve(rg.edges.size());
  for (const RgEdge& e : rg.edges) fp.costs.push_back(e.cost);
  fp.source = rg.initial_index;
  fp.sink = *rg.final_index;
  fp.balance.assign(rg.nodes.size(), 0);
  fp.balance[fp.source] += 1;
  fp.balance[fp.sink] -= 1;
  fp.truncated = rg.stats.truncated;
  return fp;
}

FlowSolution solve_min_cost_unit_flow(const FlowProblem& fp) {
  const std::size_t nv = fp.incidence.rows;
  const std::size_t ne = fp.incidence.cols;
  if (fp.costs.size() != ne) throw InvalidInput("flow problem has one cost per edge required");
  if (fp.source >= nv || fp.sink >= nv) throw InvalidInput("flow problem source/sink out of range");

  std::vector<std::size_t> tail(ne, nv);
  std::vector<std::size_t> head(ne, nv);
  for (const auto& entry : fp.incidence.entries) {
    if (entry.value == 1) tail[entry.col] = entry.row;
    if (entry.value == -1) head[entry.col] = entry.row;
  }
  for (std::size_t e = 0; e < ne; ++e) {
    if (tail[e] == nv || head[e] == nv) throw InvalidInput("incidence column without a +1/-1 pair");
  }
  const CostScale scale = CostScale::from(fp.costs);

  std::vector<std::vector<std::size_t>> incoming(nv);
  std::vector<std::vector<std::size_t>> outgoing(nv);
  for (std::size_t e = 0; e < ne; ++e) {
    incoming[head[e]].push_back(e);
    outgoing[tail[e]].push_back(e);
  }

  constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> dist(nv, inf);
  using Item = std::pair<std::int64_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[fp.sink] = 0;
  queue.emplace(0, fp.sink);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d != dist[v]) continue;
    for (std::size_t e : incoming[v]) {
      const std::int64_t nd = d + scale.scaled[e];
      if (nd < dist[tail[e]]) {
        dist[tail[e]] = nd;
        queue.emplace(nd, tail[e]);
      }
    }
  }

  FlowSolution sol;
  sol.x.assign(ne, Rational(0));
  if (dist[fp.source] == inf) {
    sol.status = fp.truncated ? FlowStatus::TruncatedGraph : FlowStatus::Infeasible;
    return sol;
  }

  for (std::size_t e = 0; e < ne; ++e) {
    if (dist[head[e]] == inf) continue;
    const Rational reduced = fp.costs[e] + scale.unscale(dist[head[e]]) - scale.unscale(dist[tail[e]]);
    if (dist[tail[e]] == inf || sgn(reduced) < 0) {
      throw InternalInvariantError("shortest-path labels are not dual feasible at edge " + std::to_string(e));
    }
  }

  Rational objective = 0;
  std::size_t v = fp.source;
  for (std::size_t steps = 0; v != fp.sink; ++steps) {
    if (steps >= nv) throw InternalInvariantError("tight-edge walk did not reach the sink");
    std::optional<std::size_t> next;
    for (std::size_t e : outgoing[v]) {
      if (dist[head[e]] != inf && dist[v] == scale.scaled[e] + dist[head[e]]) {
        next = e;
        break;
      }
    }
    if (!next) throw InternalInvariantError("no tight edge leaves a node with finite distance");
    sol.x[*next] += 1;
    objective += fp.costs[*next];
    v = head[*next];
  }
  if (objective != scale.unscale(dist[fp.source])) {
    throw InternalInvariantError("path cost differs from the certified shortest distance");
  }

  std::vector<Rational> net_flow(nv, Rational(0));
  for (std::size_t e = 0; e < ne; ++e) {
    if (sgn(sol.x[e]) == 0) continue;
    net_flow[tail[e]] += sol.x[e];
    net_flow[head[e]] -= sol.x[e];
  }
  for (std::size_t i = 0; i < nv; ++i) {
    if (net_flow[i] != fp.balance[i]) throw InternalInvariantError("flow conservation violated at node " + std::to_string(i));
  }

  sol.objective = objective;
  sol.status = fp.truncated ? FlowStatus::TruncatedGraph : FlowStatus::Optimal;
  return sol;
}

bool verify_integrality(const FlowSolution& sol, const Rational& tol) {
  for (const Rational& x : sol.x) {
    if (abs(x) > tol && abs(x - 1) > tol) return false;
  }
  return true;
}

Alignment extract_alignment(const ReachabilityGraph& rg, const SynchronousProduct& sp, const FlowSolution& sol) {
  if (sol.x.size() != rg.edges.size()) throw InternalInvariantError("solution size differs from the edge count");
  const std::size_t nv = rg.nodes.size();
  std::vector<std::optional<std::size_t>> chosen_out(nv);
  std::size_t chosen = 0;
  for (std::size_t e = 0; e < rg.edges.size(); ++e) {
    if (sgn(sol.x[e]) == 0) continue;
    if (sol.x[e] != 1) throw InternalInvariantError("fractional flow on edge " + std::to_string(e));
    if (chosen_out[rg.edges[e].tail]) throw InternalInvariantError("two chosen edges leave one node");
    chosen_out[rg.edges[e].tail] = e;
    ++chosen;
  }
  if (!rg.final_index) throw InternalInvariantError("graph has no final node");
  std::vector<std::size_t> transitions;
  std::vector<bool> visited(nv, false);
  std::size_t v = rg.initial_index;
  while (v != *rg.final_index) {
    if (visited[v] || !chosen_out[v]) throw InternalInvariantError("chosen edges do not form a single path");
    visited[v] = true;
    const RgEdge& edge = rg.edges[*chosen_out[v]];
    transitions.push_back(edge.transition);
    v = edge.head;
  }
  if (transitions.size() != chosen) throw InternalInvariantError("chosen edges outside the initial-final path");
  Alignment a = make_alignment(sp, transitions, Method::LP);
  if (a.total_cost != sol.objective) throw InternalInvariantError("alignment cost differs from the objective");
  return a;
}

MilpMatrices build_milp_matrices(const SynchronousProduct& sp, std::size_t n) {
  if (n == 0) throw InvalidInput("MILP horizon must be at least 1");
  const IncidenceTriple inc = incidence_matrices(sp.net);
  const std::size_t np = sp.net.num_places();
  const std::size_t nt = sp.net.num_transitions();
  MilpMatrices mm;
  mm.horizon = n;
  mm.num_places = np;
  mm.num_transitions = nt;
  const std::size_t nvars = n * nt + n;
  auto x = [&](std::size_t j, std::size_t k) { return k * nt + j; };
  auto z = [&](std::size_t k) { return n * nt + k; };

  mm.final_marking = IntMatrix(np, nvars);
  mm.final_marking_rhs.resize(np);
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < nt; ++j) mm.final_marking(p, x(j, k)) = inc.incidence(p, j);
    }
    mm.final_marking_rhs[p] = static_cast<std::int64_t>(sp.final_marking()[p]) -
                              static_cast<std::int64_t>(sp.initial_marking()[p]);
  }

  mm.prefix = IntMatrix(n * np, nvars);
  mm.prefix_rhs.resize(n * np);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t p = 0; p < np; ++p) {
      const std::size_t row = k * np + p;
      for (std::size_t tau = 0; tau <= k; ++tau) {
        for (std::size_t j = 0; j < nt; ++j) mm.prefix(row, x(j, tau)) = inc.incidence(p, j);
      }
      mm.prefix_rhs[row] = -static_cast<std::int64_t>(sp.initial_marking()[p]);
    }
  }

  mm.one_move = IntMatrix(n, nvars);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < nt; ++j) mm.one_move(k, x(j, k)) = 1;
    mm.one_move(k, z(k)) = 1;
  }

  mm.monotone = IntMatrix(n - 1, nvars);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    mm.monotone(k, z(k + 1)) = 1;
    mm.monotone(k, z(k)) = -1;
  }

  mm.objective.assign(nvars, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < nt; ++j) mm.objective[x(j, k)] = sp.costs[j];
  }
  return mm;
}

IntMatrix MilpMatrices::combined() const {
  IntMatrix out(num_rows(), num_variables());
  std::size_t row = 0;
  for (const IntMatrix* block : {&final_marking, &prefix, &one_move, &monotone}) {
    for (std::size_t r = 0; r < block->rows(); ++r, ++row) {
      for (std::size_t c = 0; c < block->cols(); ++c) out(row, c) = (*block)(r, c);
    }
  }
  return out;
}

}  // namespace unialign
