#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "unialign/flow_align.hpp"
#include "unialign/petri_net.hpp"
#include "unialign/rational.hpp"
#include "unialign/sync_product.hpp"

namespace unialign {

enum class Heuristic { Zero, MarkingEquation };

struct SearchConfig {
  Heuristic heuristic = Heuristic::MarkingEquation;
  std::chrono::microseconds timeout = std::chrono::seconds(60);
  std::size_t max_expansions = 50'000'000;
  std::uint32_t token_cap = 8;

  /// Throws InvalidInput for a non-positive timeout or zero limits.
  void validate() const;
};

enum class SearchOutcome { Optimal, Timeout, Exhausted };

std::string_view to_string(SearchOutcome outcome);

struct SearchStats {
  std::size_t expansions = 0;
  std::size_t heuristic_calls = 0;
  /// Heuristic values that needed a fresh LP solve.
  std::size_t lp_solves = 0;
  std::size_t queue_peak = 0;
  std::size_t cap_prunes = 0;
  std::chrono::microseconds wall_time{0};
  SearchOutcome outcome = SearchOutcome::Exhausted;
};

struct SearchResult {
  std::optional<Alignment> alignment;
  SearchStats stats;
};

/// Best-first search from the product's initial marking to its final
/// marking. Entries are ordered by f = g + h, then larger g, then insertion
/// order. A marking is reopened whenever a strictly smaller g reaches it, so
/// an admissible heuristic suffices for optimality.
///
/// Outcomes: Optimal when the final marking is popped, Timeout when the
/// time or expansion budget runs out, Exhausted when the queue empties.
SearchResult astar_align(const SynchronousProduct& sp, const SearchConfig& cfg = {});

/// Value of the continuous marking equation
///   min c^T x  s.t.  I x = m_f - m,  x >= 0
/// on the product, with exact solution vector. An empty optional means the
/// system is infeasible (+infinity).
struct MarkingEquationValue {
  std::optional<Rational> value;
  std::vector<Rational> solution;
};

/// Marking-equation lower bounds with caching and reuse of parent
/// solutions: when the parent's solution fires t at least once, the child
/// reached through t has value h(parent) - c(t) without another LP solve.
class MarkingEquationHeuristic {
 public:
  explicit MarkingEquationHeuristic(const SynchronousProduct& sp);

  const MarkingEquationValue& evaluate(const Marking& m);
  /// Value of `child`, reached from `parent` by firing `transition`.
  const MarkingEquationValue& evaluate_successor(const Marking& parent, std::size_t transition, const Marking& child);

  std::size_t lp_solves() const noexcept { return lp_solves_; }

 private:
  MarkingEquationValue solve(const Marking& m);

  const SynchronousProduct& sp_;
  std::vector<std::vector<Rational>> incidence_;
  std::unordered_map<Marking, MarkingEquationValue, MarkingHash> cache_;
  std::size_t lp_solves_ = 0;
};

/// Stateless form: returns the heuristic value, or an empty optional for +infinity.
std::optional<Rational> marking_equation_heuristic(const SynchronousProduct& sp, const Marking& m);

}  // namespace unialign
