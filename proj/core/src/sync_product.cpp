#include "unialign/sync_product.hpp"

#include <numeric>
#include <sstream>
#include <unordered_set>

#include "unialign/error.hpp"
#include "unialign/pnml.hpp"

namespace unialign {

namespace {

/// Trace transitions in path order, starting at the initially marked place.
std::vector<std::size_t> path_order(const PetriNet& tn) {
  std::vector<std::optional<std::size_t>> consumer(tn.num_places());
  for (std::size_t t = 0; t < tn.num_transitions(); ++t) consumer[tn.preset(t)[0].place] = t;
  std::size_t place = 0;
  while (tn.initial_marking()[place] == 0) ++place;
  std::vector<std::size_t> order;
  while (consumer[place]) {
    order.push_back(*consumer[place]);
    place = tn.postset(*consumer[place])[0].place;
  }
  return order;
}

std::string primed(std::string id, const std::unordered_set<std::string>& taken) {
  do {
    id += '\'';
  } while (taken.contains(id));
  return id;
}

}  // namespace

std::string_view to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::Sync: return "sync";
    case MoveKind::Model: return "model";
    case MoveKind::ModelTau: return "model-tau";
    case MoveKind::Log: return "log";
  }
  return "unknown";
}

void CostConfig::validate() const {
  if (!(tau_cost > 0)) throw InvalidInput("tau cost must be positive, got " + to_string(tau_cost));
  if (!(tau_cost < deviation_cost)) {
    throw InvalidInput("tau cost " + to_string(tau_cost) + " must be below the deviation cost " +
                       to_string(deviation_cost));
  }
}

SynchronousProduct build_sync_product(const PetriNet& sn, const PetriNet& tn, const CostConfig& cost) {
  cost.validate();
  if (!is_path_net(tn)) throw InvalidInput("trace model is not a linear path net");

  const std::size_t np_sn = sn.num_places();
  std::unordered_set<std::string> taken(sn.places().begin(), sn.places().end());
  taken.insert(sn.transitions().begin(), sn.transitions().end());

  std::vector<std::string> places = sn.places();
  for (const auto& p : tn.places()) {
    places.push_back(primed(p, taken));
    taken.insert(places.back());
  }
  std::vector<std::string> trace_ids;
  for (const auto& t : tn.transitions()) {
    trace_ids.push_back(primed(t, taken));
    taken.insert(trace_ids.back());
  }

  SynchronousProduct sp;
  sp.cost_config = cost;
  sp.model = sn;
  sp.trace_model = tn;

  std::vector<std::string> transitions;
  std::vector<Label> labels;
  std::vector<Arc> arcs;

  auto add_arcs = [&](std::size_t product_t, const PetriNet& net, std::size_t t, std::size_t offset) {
    for (const Arc& a : net.arcs()) {
      if (a.transition == t) arcs.push_back({a.place + offset, product_t, a.direction, a.weight});
    }
  };
  auto add_move = [&](SyncMove move) {
    const std::size_t index = transitions.size();
    transitions.push_back(move.id);
    labels.push_back(move.log_label ? *move.log_label : *move.model_label);
    if (move.process_transition) add_arcs(index, sn, *move.process_transition, 0);
    if (move.trace_transition) add_arcs(index, tn, *move.trace_transition, np_sn);
    sp.costs.push_back(move.cost);
    sp.moves.push_back(std::move(move));
  };

  const std::vector<std::size_t> trace_order = path_order(tn);
  for (std::size_t t2 : trace_order) {
    for (std::size_t t1 = 0; t1 < sn.num_transitions(); ++t1) {
      if (sn.label(t1).is_tau() || sn.label(t1) != tn.label(t2)) continue;
      add_move({MoveKind::Sync, "(" + sn.transitions()[t1] + "," + trace_ids[t2] + ")", t1, t2, sn.label(t1),
                tn.label(t2), Rational(0)});
      ++sp.num_sync;
    }
  }
  for (std::size_t t1 = 0; t1 < sn.num_transitions(); ++t1) {
    const bool tau = sn.label(t1).is_tau();
    add_move({tau ? MoveKind::ModelTau : MoveKind::Model, "(" + sn.transitions()[t1] + ",>>)", t1, std::nullopt,
              sn.label(t1), std::nullopt, tau ? cost.tau_cost : cost.deviation_cost});
    ++sp.num_model;
  }
  for (std::size_t t2 : trace_order) {
    add_move({MoveKind::Log, "(>>," + trace_ids[t2] + ")", std::nullopt, t2, std::nullopt, tn.label(t2),
              cost.deviation_cost});
    ++sp.num_log;
  }

  std::vector<std::uint32_t> initial = sn.initial_marking().tokens();
  std::vector<std::uint32_t> final = sn.final_marking().tokens();
  initial.insert(initial.end(), tn.initial_marking().tokens().begin(), tn.initial_marking().tokens().end());
  final.insert(final.end(), tn.final_marking().tokens().begin(), tn.final_marking().tokens().end());

  sp.net = PetriNet(std::move(places), std::move(transitions), std::move(labels), std::move(arcs),
                    Marking(std::move(initial)), Marking(std::move(final)));
  return sp;
}

SynchronousProduct build_sync_product(const PetriNet& sn, const Trace& trace, const CostConfig& cost) {
  return build_sync_product(sn, build_trace_model(trace), cost);
}

std::vector<Rational> cost_vector(const SynchronousProduct& sp) { return sp.costs; }

CostScale CostScale::from(const std::vector<Rational>& costs) {
  mpz_class lcm = 1;
  for (const Rational& c : costs) {
    if (c < 0) throw InvalidInput("negative move cost " + to_string(c));
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  CostScale scale;
  scale.denominator = Rational(lcm);
  scale.scaled.reserve(costs.size());
  for (const Rational& c : costs) scale.scaled.push_back(to_int64(Rational(c * scale.denominator)));
  return scale;
}

std::string write_product_pnml(const SynchronousProduct& sp) {
  std::vector<std::string> notes;
  notes.reserve(sp.moves.size());
  for (const SyncMove& m : sp.moves) notes.push_back(std::string(to_string(m.kind)) + " cost=" + to_string(m.cost));
  return write_pnml(sp.net, "synchronous-product", &notes);
}

}  // namespace unialign
