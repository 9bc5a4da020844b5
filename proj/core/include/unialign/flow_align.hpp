#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unialign/matrix.hpp"
#include "unialign/rational.hpp"
#include "unialign/reachability.hpp"
#include "unialign/sync_product.hpp"

namespace unialign {

/// Unit min-cost flow from the initial node to the final node of a
/// reachability graph, with 0 <= x_e <= 1.
struct FlowProblem {
  NodeArcIncidence incidence;
  std::vector<Rational> costs;
  /// +1 at the initial node, -1 at the final node, 0 elsewhere.
  std::vector<int> balance;
  std::size_t source = 0;
  std::size_t sink = 0;
  /// The graph was cut short by an exploration limit.
  bool truncated = false;
};

enum class FlowStatus { Optimal, Infeasible, TruncatedGraph };

std::string_view to_string(FlowStatus status);

struct FlowSolution {
  std::vector<Rational> x;
  Rational objective;
  FlowStatus status = FlowStatus::Infeasible;
};

enum class Method { LP, ASTAR };

std::string_view to_string(Method method);

struct Alignment {
  std::vector<SyncMove> moves;
  Rational total_cost;
  std::size_t num_sync = 0;
  std::size_t num_model = 0;
  std::size_t num_tau = 0;
  std::size_t num_log = 0;
  Method method = Method::LP;
};

/// Builds an alignment from a sequence of product transitions.
Alignment make_alignment(const SynchronousProduct& sp, const std::vector<std::size_t>& transitions, Method method);

/// Throws Infeasible when the graph has no final node; the exception's
/// truncated() flag tells a cut-short graph from a genuinely unreachable
/// final marking.
FlowProblem assemble_flow_problem(const ReachabilityGraph& rg);

/// Exact solver for the unit flow problem.
///
/// Distances to the sink are computed by label-setting shortest paths on
/// integer-scaled costs; the returned path follows, from the source, the
/// lowest-index edge that is tight at every node, which gives the
/// lexicographically smallest optimal path in edge order. Dual feasibility
/// of the distances and the path's cost are re-checked in rationals before
/// returning. A truncated problem yields TruncatedGraph with the best path
/// found inside the partial graph.
FlowSolution solve_min_cost_unit_flow(const FlowProblem& fp);

/// True iff every x_e lies within `tol` of 0 or 1.
bool verify_integrality(const FlowSolution& sol, const Rational& tol = Rational(0));

/// Orders the chosen edges by walking from the initial node. Throws
/// InternalInvariantError if the chosen edges do not form one path.
Alignment extract_alignment(const ReachabilityGraph& rg, const SynchronousProduct& sp, const FlowSolution& sol);

/// Constraint data of the step-indexed integer program on the product.
///
/// Variable x_{j,k} (transition j at step k, both 0-based here) has column
/// k*|T| + j; z_k has column n*|T| + k. Rows of `combined` are stacked as:
/// final-marking equalities (|P|), prefix inequalities (n*|P|), one-move
/// equalities (n), termination monotonicity inequalities (n-1).
struct MilpMatrices {
  std::size_t horizon = 0;
  std::size_t num_places = 0;
  std::size_t num_transitions = 0;
  /// I * sum_k x_k = m_f - m_i.
  IntMatrix final_marking;
  std::vector<std::int64_t> final_marking_rhs;
  /// I * sum_{tau<=k} x_tau >= -m_i for each k.
  IntMatrix prefix;
  std::vector<std::int64_t> prefix_rhs;
  /// sum_j x_{j,k} + z_k = 1.
  IntMatrix one_move;
  /// z_{k+1} - z_k >= 0.
  IntMatrix monotone;
  std::vector<Rational> objective;

  std::size_t num_variables() const { return horizon * num_transitions + horizon; }
  std::size_t num_rows() const {
    return final_marking.rows() + prefix.rows() + one_move.rows() + monotone.rows();
  }
  IntMatrix combined() const;
};

/// Throws InvalidInput for n == 0.
MilpMatrices build_milp_matrices(const SynchronousProduct& sp, std::size_t n);

struct NonTuWitness {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::int64_t determinant = 0;
};

/// Looks for a square submatrix with |det| >= 2. Orders up to 3 are searched
/// exhaustively over connected row/column subsets (a submatrix whose
/// bipartite row/column graph is disconnected has the product of its
/// components' determinants, so a smallest witness is always connected);
/// larger orders are sampled with `seed` until the budget runs out.
std::optional<NonTuWitness> find_non_tu_witness(const IntMatrix& m, std::size_t order_limit,
                                                std::chrono::milliseconds budget, std::uint64_t seed = 1);

/// Exact integer determinant of a small square matrix.
std::int64_t determinant(const IntMatrix& m);

}  // namespace unialign
