#include "unialign/astar.hpp"

#include <limits>
#include <queue>
#include <tuple>

#include "unialign/error.hpp"
#include "unialign/simplex.hpp"

namespace unialign {

void SearchConfig::validate() const {
  if (timeout.count() <= 0) throw InvalidInput("search timeout must be positive");
  if (max_expansions == 0) throw InvalidInput("max_expansions must be at least 1");
  if (token_cap == 0) throw InvalidInput("token_cap must be at least 1");
}

std::string_view to_string(SearchOutcome outcome) {
  switch (outcome) {
    case SearchOutcome::Optimal: return "OPTIMAL";
    case SearchOutcome::Timeout: return "TIMEOUT";
    case SearchOutcome::Exhausted: return "EXHAUSTED";
  }
  return "UNKNOWN";
}

MarkingEquationHeuristic::MarkingEquationHeuristic(const SynchronousProduct& sp) : sp_(sp) {
  const IncidenceTriple inc = incidence_matrices(sp.net);
  incidence_.assign(sp.net.num_places(), std::vector<Rational>(sp.net.num_transitions()));
  for (std::size_t p = 0; p < sp.net.num_places(); ++p) {
    for (std::size_t t = 0; t < sp.net.num_transitions(); ++t) incidence_[p][t] = static_cast<long>(inc.incidence(p, t));
  }
}

MarkingEquationValue MarkingEquationHeuristic::solve(const Marking& m) {
  ++lp_solves_;
  const std::size_t np = sp_.net.num_places();
  std::vector<Rational> rhs(np);
  for (std::size_t p = 0; p < np; ++p) {
    rhs[p] = static_cast<long>(sp_.final_marking()[p]) - static_cast<long>(m[p]);
  }
  LpResult lp = solve_lp(incidence_, rhs, sp_.costs);
  MarkingEquationValue out;
  if (lp.status == LpStatus::Optimal) {
    out.value = std::move(lp.objective);
    out.solution = std::move(lp.x);
  } else if (lp.status == LpStatus::Unbounded) {
    throw InternalInvariantError("marking equation unbounded despite nonnegative costs");
  }
  return out;
}

const MarkingEquationValue& MarkingEquationHeuristic::evaluate(const Marking& m) {
  if (m.size() != sp_.net.num_places()) throw InvalidInput("marking does not match the product");
  auto it = cache_.find(m);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(m, solve(m)).first->second;
}

const MarkingEquationValue& MarkingEquationHeuristic::evaluate_successor(const Marking& parent, std::size_t transition,
                                                                         const Marking& child) {
  auto it = cache_.find(child);
  if (it != cache_.end()) return it->second;
  const MarkingEquationValue& pv = evaluate(parent);
  if (pv.value && pv.solution[transition] >= 1) {
    MarkingEquationValue derived;
    derived.value = *pv.value - sp_.costs[transition];
    derived.solution = pv.solution;
    derived.solution[transition] -= 1;
    return cache_.emplace(child, std::move(derived)).first->second;
  }
  return cache_.emplace(child, solve(child)).first->second;
}

std::optional<Rational> marking_equation_heuristic(const SynchronousProduct& sp, const Marking& m) {
  MarkingEquationHeuristic h(sp);
  return h.evaluate(m).value;
}

namespace {

constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();

struct State {
  Marking marking;
  std::int64_t g = kInfinity;
  std::int64_t h = 0;
  std::size_t parent = 0;
  std::size_t via = 0;
};

struct Entry {
  std::int64_t f;
  std::int64_t g;
  std::uint64_t seq;
  std::size_t state;
};

struct EntryAfter {
  bool operator()(const Entry& a, const Entry& b) const {
    return std::tie(a.f, b.g, a.seq) > std::tie(b.f, a.g, b.seq);
  }
};

}  // namespace

SearchResult astar_align(const SynchronousProduct& sp, const SearchConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();
  const auto deadline = start + cfg.timeout;
  const PetriNet& net = sp.net;
  const std::size_t nt = net.num_transitions();
  const CostScale scale = CostScale::from(sp.costs);

  SearchResult result;
  SearchStats& stats = result.stats;
  auto finish = [&](SearchOutcome outcome) {
    stats.outcome = outcome;
    stats.wall_time = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
  };

  std::vector<bool> self_loop(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    std::vector<std::int64_t> delta(net.num_places(), 0);
    for (const auto& pw : net.preset(t)) delta[pw.place] -= pw.weight;
    for (const auto& pw : net.postset(t)) delta[pw.place] += pw.weight;
    self_loop[t] = std::all_of(delta.begin(), delta.end(), [](std::int64_t d) { return d == 0; });
  }

  std::optional<MarkingEquationHeuristic> me;
  if (cfg.heuristic == Heuristic::MarkingEquation) me.emplace(sp);
  auto scaled_h = [&](const MarkingEquationValue& v) -> std::int64_t {
    if (!v.value) return kInfinity;
    return to_int64(ceil(*v.value * scale.denominator));
  };

  std::vector<State> states;
  std::unordered_map<Marking, std::size_t, MarkingHash> index;
  std::priority_queue<Entry, std::vector<Entry>, EntryAfter> open;
  std::uint64_t seq = 0;

  {
    State s0;
    s0.marking = net.initial_marking();
    s0.g = 0;
    if (me) {
      ++stats.heuristic_calls;
      s0.h = scaled_h(me->evaluate(s0.marking));
    }
    if (s0.h == kInfinity) {
      stats.lp_solves = me ? me->lp_solves() : 0;
      finish(SearchOutcome::Exhausted);
      return result;
    }
    index.emplace(s0.marking, 0);
    open.push({s0.h, 0, seq++, 0});
    states.push_back(std::move(s0));
  }

  while (!open.empty()) {
    const Entry top = open.top();
    open.pop();
    if (top.g != states[top.state].g) continue;
    if (states[top.state].marking == net.final_marking()) {
      std::vector<std::size_t> path;
      for (std::size_t s = top.state; s != 0; s = states[s].parent) {
        if (path.size() > states.size()) throw InternalInvariantError("cyclic parent chain in A* search");
        path.push_back(states[s].via);
      }
      std::reverse(path.begin(), path.end());
      result.alignment = make_alignment(sp, path, Method::ASTAR);
      if (result.alignment->total_cost != scale.unscale(top.g)) {
        throw InternalInvariantError("A* path cost differs from its g value");
      }
      stats.lp_solves = me ? me->lp_solves() : 0;
      finish(SearchOutcome::Optimal);
      return result;
    }
    if (stats.expansions >= cfg.max_expansions || Clock::now() >= deadline) {
      stats.lp_solves = me ? me->lp_solves() : 0;
      finish(SearchOutcome::Timeout);
      return result;
    }
    ++stats.expansions;

    for (std::size_t t = 0; t < nt; ++t) {
      if (self_loop[t]) continue;
      const Marking& m = states[top.state].marking;
      bool enabled = true;
      for (const auto& pw : net.preset(t)) {
        if (m[pw.place] < pw.weight) {
          enabled = false;
          break;
        }
      }
      if (!enabled) continue;
      Marking next = m;
      for (const auto& pw : net.preset(t)) next[pw.place] -= pw.weight;
      bool capped = false;
      for (const auto& pw : net.postset(t)) {
        next[pw.place] += pw.weight;
        if (next[pw.place] > cfg.token_cap) capped = true;
      }
      if (capped) {
        ++stats.cap_prunes;
        continue;
      }
      const std::int64_t g = top.g + scale.scaled[t];
      auto it = index.find(next);
      std::size_t id;
      if (it == index.end()) {
        std::int64_t h = 0;
        if (me) {
          ++stats.heuristic_calls;
          h = scaled_h(me->evaluate_successor(states[top.state].marking, t, next));
        }
        id = states.size();
        index.emplace(next, id);
        State s;
        s.marking = std::move(next);
        s.h = h;
        states.push_back(std::move(s));
      } else {
        id = it->second;
        if (g >= states[id].g) continue;
      }
      State& s = states[id];
      if (s.h == kInfinity) continue;
      s.g = g;
      s.parent = top.state;
      s.via = t;
      open.push({g + s.h, g, seq++, id});
      stats.queue_peak = std::max(stats.queue_peak, open.size());
    }
  }
  stats.lp_solves = me ? me->lp_solves() : 0;
  finish(SearchOutcome::Exhausted);
  return result;
}

}  // namespace unialign
